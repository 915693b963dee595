#include "qds/archive/unstructured.hpp"

#include <stdexcept>

namespace qds {

UnstructuredArchive::UnstructuredArchive(std::optional<std::size_t> max_size)
    : _max_size(max_size) {
    if (_max_size && *_max_size < 1)
        throw std::invalid_argument("unstructured archive: max_size must be >= 1");
}

void UnstructuredArchive::insert_random(const std::vector<Individual>& candidates,
                                        std::size_t add_count, RandomSource& rng) {
    if (add_count == 0 || candidates.empty())
        return;
    if (add_count >= candidates.size()) {
        _members.insert(_members.end(), candidates.begin(), candidates.end());
    } else {
        // partial Fisher-Yates over candidate indices
        std::vector<std::size_t> idx(candidates.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        for (std::size_t i = 0; i < add_count; ++i) {
            const std::size_t j = i + rng.uniform_below(idx.size() - i);
            std::swap(idx[i], idx[j]);
            _members.push_back(candidates[idx[i]]);
        }
    }
    enforce_capacity(rng);
}

void UnstructuredArchive::insert(const Individual& ind, RandomSource& rng) {
    _members.push_back(ind);
    enforce_capacity(rng);
}

void UnstructuredArchive::enforce_capacity(RandomSource& rng) {
    if (!_max_size)
        return;
    while (_members.size() > *_max_size) {
        const std::size_t victim = rng.uniform_below(_members.size());
        _members[victim] = std::move(_members.back());
        _members.pop_back();
    }
}

std::vector<Individual> UnstructuredArchive::sample(std::size_t count,
                                                    RandomSource& rng) const {
    if (_members.empty())
        throw std::invalid_argument("unstructured archive: cannot sample from empty archive");
    std::vector<Individual> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(_members[rng.uniform_below(_members.size())]);
    return out;
}

} // namespace qds
