#pragma once

#include <optional>
#include <vector>

#include "qds/random.hpp"
#include "qds/types.hpp"

namespace qds {

/// Fixed-resolution grid over behavior space with at most one occupant per
/// cell. The benchmark settings are reward-free, so the vanilla keep-better
/// insertion reduces to keep-first; replace-at-random is available for
/// sensitivity studies.
struct GridDim {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t cells = 100;
};

class GridArchive {
public:
    enum class Policy { keep_first, replace_at_random };

    explicit GridArchive(std::vector<GridDim> dims, Policy policy = Policy::keep_first);

    /// Flat cell index for a behavior; out-of-range coordinates clamp to the
    /// boundary cells, values at the upper bound map to the last cell.
    std::size_t cell_index(const Behavior& b) const;

    /// Returns true when ind became the occupant of its cell.
    bool insert(const Individual& ind, RandomSource& rng);

    /// count occupants drawn uniformly over occupied cells, with
    /// replacement.
    std::vector<Individual> sample(std::size_t count, RandomSource& rng) const;

    std::size_t occupied_count() const { return _occupied.size(); }
    bool empty() const { return _occupied.empty(); }
    std::size_t total_cells() const { return _total_cells; }
    const std::vector<GridDim>& dims() const { return _dims; }

    /// Occupants in first-occupancy order (deterministic across replays).
    std::vector<Individual> occupants() const;
    const std::optional<Individual>& cell(std::size_t flat_index) const {
        return _cells[flat_index];
    }
    const std::vector<std::size_t>& occupied_cells() const { return _occupied; }

private:
    std::vector<GridDim> _dims;
    Policy _policy;
    std::size_t _total_cells = 1;
    std::vector<std::optional<Individual>> _cells;
    std::vector<std::size_t> _occupied; // flat indices, first-occupancy order
};

} // namespace qds
