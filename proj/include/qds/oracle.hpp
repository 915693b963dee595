#pragma once

#include <cstdint>
#include <vector>

namespace qds::oracle {

/// Verification-only re-implementation of the novelty score: direct scalar
/// pairwise distances and a full sort, no shared code with NoveltyScorer or
/// the batch kernels. Tests and verification-mode runs compare its output
/// against the production path for exact equality.
double knn_mean_distance_full_scan(const std::vector<double>& query,
                                   std::uint64_t query_id,
                                   const std::vector<std::vector<double>>& pool,
                                   const std::vector<std::uint64_t>& pool_ids,
                                   int k);

} // namespace qds::oracle
