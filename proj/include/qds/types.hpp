#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace qds {

/// Genotypes and behavior descriptors are small dense real vectors; the
/// owning environment fixes their dimensions.
using Genotype = std::vector<double>;
using Behavior = std::vector<double>;

/// Per-coordinate closed interval. An environment with no bounds (SSF) uses
/// an empty bounds vector.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};
using Bounds = std::vector<Interval>;

/// One evaluated solution. `behavior` is the cached value of
/// environment.evaluate(genotype); `aux` carries environment-specific
/// extras (the spiral stores the generating angle and arc length, SSF the
/// radial scalar).
struct Individual {
    std::uint64_t id = 0;
    Genotype genotype;
    Behavior behavior;
    std::vector<double> aux;
    std::uint32_t born_at = 0;
};

} // namespace qds
