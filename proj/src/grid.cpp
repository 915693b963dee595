#include "qds/archive/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace qds {

GridArchive::GridArchive(std::vector<GridDim> dims, Policy policy)
    : _dims(std::move(dims)), _policy(policy) {
    if (_dims.empty())
        throw std::invalid_argument("grid archive: needs at least one dimension");
    for (const auto& d : _dims) {
        if (d.cells < 1)
            throw std::invalid_argument("grid archive: resolution must be >= 1");
        if (!(d.lo < d.hi))
            throw std::invalid_argument("grid archive: degenerate dimension bounds");
        _total_cells *= d.cells;
    }
    _cells.resize(_total_cells);
}

std::size_t GridArchive::cell_index(const Behavior& b) const {
    if (b.size() != _dims.size())
        throw std::invalid_argument("grid archive: behavior dimension mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < _dims.size(); ++i) {
        const auto& d = _dims[i];
        const double width = (d.hi - d.lo) / static_cast<double>(d.cells);
        double idx = std::floor((b[i] - d.lo) / width);
        if (idx < 0.0)
            idx = 0.0;
        const double last = static_cast<double>(d.cells - 1);
        if (idx > last)
            idx = last;
        flat = flat * d.cells + static_cast<std::size_t>(idx);
    }
    return flat;
}

bool GridArchive::insert(const Individual& ind, RandomSource& rng) {
    const std::size_t idx = cell_index(ind.behavior);
    auto& cell = _cells[idx];
    if (!cell) {
        cell = ind;
        _occupied.push_back(idx);
        return true;
    }
    if (_policy == Policy::replace_at_random && rng.uniform_below(2) == 1) {
        cell = ind;
        return true;
    }
    return false;
}

std::vector<Individual> GridArchive::sample(std::size_t count, RandomSource& rng) const {
    if (_occupied.empty())
        throw std::invalid_argument("grid archive: cannot sample from empty archive");
    std::vector<Individual> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t cell = _occupied[rng.uniform_below(_occupied.size())];
        out.push_back(*_cells[cell]);
    }
    return out;
}

std::vector<Individual> GridArchive::occupants() const {
    std::vector<Individual> out;
    out.reserve(_occupied.size());
    for (const std::size_t idx : _occupied)
        out.push_back(*_cells[idx]);
    return out;
}

} // namespace qds
