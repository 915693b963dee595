#pragma once

#include <memory>
#include <optional>

#include "qds/algo/config.hpp"
#include "qds/archive/unstructured.hpp"
#include "qds/env/environment.hpp"
#include "qds/novelty.hpp"

namespace qds {

/// Novelty Search generation loop. Each generation:
///   1. parents are drawn uniformly from the population (and the archive,
///      when resampling is enabled),
///   2. offspring are Gaussian mutations of the parents,
///   3. every member of population + offspring is scored by mean distance to
///      its k nearest neighbors in population + offspring + archive
///      (self-excluded by id),
///   4. the M most novel survive (ties broken by ascending id),
///   5. the archive absorbs offspring per its insertion policy.
class NoveltySearch {
public:
    struct VerifyOptions {
        bool invariants = false;         // structural checks each generation
        std::size_t oracle_interval = 0; // full-scan novelty recheck every n-th generation
    };

    NoveltySearch(const Environment& env, const NsConfig& config, RandomSource& rng,
                  VerifyOptions verify);
    NoveltySearch(const Environment& env, const NsConfig& config, RandomSource& rng)
        : NoveltySearch(env, config, rng, VerifyOptions()) {}

    /// Generation 0: initialize and evaluate the population.
    void initialize();
    void step();

    std::uint32_t generation() const { return _generation; }
    const std::vector<Individual>& population() const { return _population; }
    std::vector<Individual> archive_snapshot() const;
    const UnstructuredArchive* unstructured_archive() const {
        return _unstructured ? &*_unstructured : nullptr;
    }
    const GridArchive* grid_archive() const { return _grid ? &*_grid : nullptr; }
    std::size_t archive_size() const;
    double last_novelty_mean() const { return _last_novelty_mean; }
    /// Novelty scores of the current population, aligned with population().
    const std::vector<double>& population_novelty() const { return _population_novelty; }

private:
    std::vector<const Individual*> parent_pool() const;
    std::vector<double> score_combined(const std::vector<Individual>& offspring) const;
    void update_archive(const std::vector<Individual>& offspring,
                        const std::vector<double>& offspring_novelty);
    void check_invariants() const;
    void check_with_oracle(const std::vector<Individual>& offspring,
                           const std::vector<double>& novelty) const;

    const Environment& _env;
    NsConfig _config;
    RandomSource& _rng;
    VerifyOptions _verify;

    std::vector<Individual> _population;
    std::vector<double> _population_novelty;
    std::optional<UnstructuredArchive> _unstructured;
    std::optional<GridArchive> _grid;
    std::uint64_t _next_id = 0;
    std::uint32_t _generation = 0;
    double _last_novelty_mean = 0.0;
    mutable NoveltyScorer _scorer;
};

} // namespace qds
