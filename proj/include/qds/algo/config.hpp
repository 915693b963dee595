#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "qds/archive/grid.hpp"
#include "qds/metric.hpp"

namespace qds {

struct ArchiveSpec {
    enum class Kind { none, unstructured, grid };
    Kind kind = Kind::none;

    /// unstructured: capacity (nullopt = unlimited)
    std::optional<std::size_t> max_size;

    /// grid: per-dimension bounds and resolution
    std::vector<GridDim> grid_dims;
    bool replace_at_random = false;

    /// unstructured insertion policy per generation: the most novel
    /// offspring plus uniformly random offspring. The random path alone
    /// reproduces plain random insertion.
    std::size_t add_most_novel = 1;
    std::size_t add_random = 1;
};

struct NsConfig {
    std::size_t population_size = 30; // M
    std::size_t offspring_size = 30;  // N
    int k = 10;
    DistanceMetric metric;
    ArchiveSpec archive;
    bool resample_from_archive = false; // parents from archive and population
    double sigma = 0.3;
};

struct MapElitesConfig {
    std::vector<GridDim> grid_dims;
    std::size_t batch_size = 30;
    std::size_t initial_batch = 30;
    double sigma = 0.3;
    bool replace_at_random = false;
};

using AlgorithmConfig = std::variant<NsConfig, MapElitesConfig>;

} // namespace qds
