#pragma once

#include <cstdint>
#include <vector>

#include "qds/metric.hpp"
#include "qds/types.hpp"

namespace qds {

/// Reference pool for k-nearest-neighbor novelty. Coordinates are kept in
/// structure-of-arrays layout so one query scans the pool with the batch
/// distance kernels. Entries carry the owning individual's id; a query never
/// counts entries with its own id (the same individual may sit in both the
/// population and the archive), while value-identical entries with other ids
/// do count.
class NoveltyScorer {
public:
    void reset(std::size_t dim, std::size_t expected = 0);
    void add(const double* coords, std::uint64_t id);
    std::size_t size() const { return _ids.size(); }
    std::size_t dim() const { return _dim; }

    /// Mean distance from `query` to its min(k, pool-after-exclusion)
    /// nearest entries. The k smallest distances are summed in ascending
    /// order, so the result is bitwise independent of pool ordering.
    double mean_knn(const double* query, std::uint64_t query_id, int k) const;

private:
    std::size_t _dim = 0;
    std::vector<double> _x, _y;   // dim <= 2
    std::vector<double> _flat;    // row-major, dim > 2
    std::vector<std::uint64_t> _ids;
    mutable std::vector<double> _scratch;
};

/// Mean distance from x to its min(k, |pool|) nearest neighbors, Euclidean
/// in the coordinates given (callers apply metric projections up front; the
/// geodesic-spiral metric projects to 1-D arc length). No identity
/// exclusion: a bare descriptor pool has no ids to exclude by.
double knn_mean_distance(const std::vector<double>& x,
                         const std::vector<std::vector<double>>& pool, int k);

} // namespace qds
