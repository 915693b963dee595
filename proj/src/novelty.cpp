#include "qds/novelty.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "qds/kernels.hpp"

namespace qds {

void NoveltyScorer::reset(std::size_t dim, std::size_t expected) {
    if (dim == 0)
        throw std::invalid_argument("NoveltyScorer: dimension must be >= 1");
    _dim = dim;
    _x.clear();
    _y.clear();
    _flat.clear();
    _ids.clear();
    if (expected > 0) {
        _ids.reserve(expected);
        if (_dim <= 2) {
            _x.reserve(expected);
            if (_dim == 2)
                _y.reserve(expected);
        } else {
            _flat.reserve(expected * _dim);
        }
    }
}

void NoveltyScorer::add(const double* coords, std::uint64_t id) {
    if (_dim <= 2) {
        _x.push_back(coords[0]);
        if (_dim == 2)
            _y.push_back(coords[1]);
    } else {
        _flat.insert(_flat.end(), coords, coords + _dim);
    }
    _ids.push_back(id);
}

double NoveltyScorer::mean_knn(const double* query, std::uint64_t query_id, int k) const {
    if (k < 1)
        throw std::invalid_argument("mean_knn: k must be >= 1");
    const std::size_t n = _ids.size();
    if (n == 0)
        throw std::invalid_argument("mean_knn: empty pool");

    _scratch.resize(n);
    if (_dim == 1)
        kernels::abs_diff(query[0], _x.data(), n, _scratch.data());
    else if (_dim == 2)
        kernels::euclidean2(query[0], query[1], _x.data(), _y.data(), n, _scratch.data());
    else
        kernels::euclidean_nd(query, _flat.data(), n, _dim, _scratch.data());

    // self-exclusion by id, never by value
    std::size_t excluded = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (_ids[i] == query_id) {
            _scratch[i] = std::numeric_limits<double>::infinity();
            ++excluded;
        }
    }
    const std::size_t valid = n - excluded;
    if (valid == 0)
        throw std::invalid_argument("mean_knn: pool contains only the query itself");

    const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), valid);
    auto mid = _scratch.begin() + static_cast<std::ptrdiff_t>(kk);
    std::nth_element(_scratch.begin(), mid - 1, _scratch.end());
    std::sort(_scratch.begin(), mid);
    double sum = 0.0;
    for (std::size_t i = 0; i < kk; ++i)
        sum += _scratch[i];
    return sum / static_cast<double>(kk);
}

double knn_mean_distance(const std::vector<double>& x,
                         const std::vector<std::vector<double>>& pool, int k) {
    if (pool.empty())
        throw std::invalid_argument("knn_mean_distance: empty pool");
    NoveltyScorer scorer;
    scorer.reset(x.size(), pool.size());
    std::uint64_t id = 0;
    for (const auto& p : pool) {
        if (p.size() != x.size())
            throw std::invalid_argument("knn_mean_distance: dimension mismatch in pool");
        scorer.add(p.data(), ++id);
    }
    return scorer.mean_knn(x.data(), 0, k);
}

} // namespace qds
