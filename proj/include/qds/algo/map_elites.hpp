#pragma once

#include "qds/algo/config.hpp"
#include "qds/archive/grid.hpp"
#include "qds/env/environment.hpp"

namespace qds {

/// Vanilla MAP-Elites: parents sampled uniformly over occupied grid cells,
/// offspring mutated, evaluated and grid-inserted (keep-first in these
/// reward-free settings). The grid is seeded with the initialized batch.
class MapElites {
public:
    MapElites(const Environment& env, const MapElitesConfig& config, RandomSource& rng,
              bool verify_invariants = false);

    void initialize();
    void step();

    std::uint32_t generation() const { return _generation; }
    const GridArchive& grid() const { return _grid; }
    std::vector<Individual> archive_snapshot() const { return _grid.occupants(); }
    std::size_t archive_size() const { return _grid.occupied_count(); }

private:
    void check_invariants() const;

    const Environment& _env;
    MapElitesConfig _config;
    RandomSource& _rng;
    bool _verify_invariants;

    GridArchive _grid;
    std::uint64_t _next_id = 0;
    std::uint32_t _generation = 0;
};

} // namespace qds
