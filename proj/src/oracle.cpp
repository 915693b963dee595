#include "qds/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qds::oracle {

double knn_mean_distance_full_scan(const std::vector<double>& query,
                                   std::uint64_t query_id,
                                   const std::vector<std::vector<double>>& pool,
                                   const std::vector<std::uint64_t>& pool_ids,
                                   int k) {
    if (pool.size() != pool_ids.size())
        throw std::invalid_argument("full_scan: pool/id size mismatch");
    if (pool.empty())
        throw std::invalid_argument("full_scan: empty pool");
    if (k < 1)
        throw std::invalid_argument("full_scan: k must be >= 1");

    std::vector<double> dists;
    dists.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool_ids[i] == query_id)
            continue;
        const auto& p = pool[i];
        if (p.size() != query.size())
            throw std::invalid_argument("full_scan: dimension mismatch");
        if (query.size() == 1) {
            dists.push_back(std::fabs(p[0] - query[0]));
        } else {
            double acc = 0.0;
            for (std::size_t d = 0; d < p.size(); ++d) {
                const double diff = p[d] - query[d];
                acc += diff * diff;
            }
            dists.push_back(std::sqrt(acc));
        }
    }
    if (dists.empty())
        throw std::invalid_argument("full_scan: pool contains only the query itself");

    std::sort(dists.begin(), dists.end());
    const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), dists.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < kk; ++i)
        sum += dists[i];
    return sum / static_cast<double>(kk);
}

} // namespace qds::oracle
