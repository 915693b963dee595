#pragma once

#include <optional>
#include <vector>

#include "qds/random.hpp"
#include "qds/types.hpp"

namespace qds {

/// Bounded multiset of individuals with uniformly random insertion picks and
/// uniformly random eviction. No capacity means unlimited growth.
class UnstructuredArchive {
public:
    explicit UnstructuredArchive(std::optional<std::size_t> max_size = std::nullopt);

    /// Appends add_count members drawn uniformly (without replacement) from
    /// candidates, then evicts uniformly random members until the capacity
    /// holds again.
    void insert_random(const std::vector<Individual>& candidates, std::size_t add_count,
                       RandomSource& rng);

    /// Appends one individual, then enforces capacity by random eviction.
    void insert(const Individual& ind, RandomSource& rng);

    /// count members drawn uniformly with replacement.
    std::vector<Individual> sample(std::size_t count, RandomSource& rng) const;

    const std::vector<Individual>& members() const { return _members; }
    std::size_t size() const { return _members.size(); }
    bool empty() const { return _members.empty(); }
    std::optional<std::size_t> max_size() const { return _max_size; }

private:
    void enforce_capacity(RandomSource& rng);

    std::optional<std::size_t> _max_size;
    std::vector<Individual> _members;
};

} // namespace qds
