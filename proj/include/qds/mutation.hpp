#pragma once

#include "qds/random.hpp"
#include "qds/types.hpp"

namespace qds {

/// Zero-mean isotropic Gaussian mutation with per-coordinate clamping into
/// the environment bounds. Pass an empty Bounds for unbounded spaces.
/// Consumes exactly g.size() normal draws from rng.
Genotype gaussian_mutate(const Genotype& g, double sigma, RandomSource& rng,
                         const Bounds& bounds);

} // namespace qds
