#include "qds/algo/novelty_search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qds/mutation.hpp"
#include "qds/oracle.hpp"

namespace qds {

NoveltySearch::NoveltySearch(const Environment& env, const NsConfig& config,
                             RandomSource& rng, VerifyOptions verify)
    : _env(env), _config(config), _rng(rng), _verify(verify) {
    if (_config.population_size < 1)
        throw std::invalid_argument("ns: population size must be >= 1");
    if (_config.k < 1)
        throw std::invalid_argument("ns: k must be >= 1");
    if (!(_config.sigma > 0.0))
        throw std::invalid_argument("ns: sigma must be positive");
    if (_config.metric.kind == DistanceMetric::Kind::geodesic_spiral &&
        _env.name().rfind("spiral", 0) != 0)
        throw std::invalid_argument("ns: geodesic-spiral metric requires a spiral environment");

    switch (_config.archive.kind) {
    case ArchiveSpec::Kind::none:
        break;
    case ArchiveSpec::Kind::unstructured:
        _unstructured.emplace(_config.archive.max_size);
        break;
    case ArchiveSpec::Kind::grid:
        _grid.emplace(_config.archive.grid_dims,
                      _config.archive.replace_at_random
                          ? GridArchive::Policy::replace_at_random
                          : GridArchive::Policy::keep_first);
        break;
    }
    if (_config.resample_from_archive && _config.archive.kind == ArchiveSpec::Kind::none)
        throw std::invalid_argument("ns: resampling from the archive requires an archive");
}

void NoveltySearch::initialize() {
    _population.clear();
    auto genotypes = _env.initial_population(_config.population_size, _config.sigma, _rng);
    for (auto& g : genotypes) {
        Evaluation eval = _env.evaluate(g);
        _population.push_back(Individual{_next_id++, std::move(g), std::move(eval.behavior),
                                         std::move(eval.aux), 0});
    }
    _population_novelty = score_combined({});
    _last_novelty_mean =
        std::accumulate(_population_novelty.begin(), _population_novelty.end(), 0.0) /
        static_cast<double>(_population.size());
    _generation = 0;
}

std::vector<const Individual*> NoveltySearch::parent_pool() const {
    std::vector<const Individual*> pool;
    for (const auto& ind : _population)
        pool.push_back(&ind);
    if (_config.resample_from_archive) {
        if (_unstructured)
            for (const auto& ind : _unstructured->members())
                pool.push_back(&ind);
        if (_grid)
            for (const std::size_t cell : _grid->occupied_cells())
                pool.push_back(&*_grid->cell(cell));
    }
    return pool;
}

std::vector<double> NoveltySearch::score_combined(
    const std::vector<Individual>& offspring) const {
    const std::size_t dim = metric_dim(_config.metric, _env.behavior_dim());
    std::size_t pool_size = _population.size() + offspring.size() + archive_size();
    _scorer.reset(dim, pool_size);

    std::vector<double> coords(dim);
    auto add = [&](const Individual& ind) {
        metric_project(_config.metric, ind, coords.data());
        _scorer.add(coords.data(), ind.id);
    };
    for (const auto& ind : _population)
        add(ind);
    for (const auto& ind : offspring)
        add(ind);
    if (_unstructured)
        for (const auto& ind : _unstructured->members())
            add(ind);
    if (_grid)
        for (const std::size_t cell : _grid->occupied_cells())
            add(*_grid->cell(cell));

    std::vector<double> novelty(_population.size() + offspring.size());
    for (std::size_t i = 0; i < novelty.size(); ++i) {
        const Individual& ind =
            i < _population.size() ? _population[i] : offspring[i - _population.size()];
        if (_scorer.size() <= 1) { // lone individual has no neighbors
            novelty[i] = 0.0;
            continue;
        }
        metric_project(_config.metric, ind, coords.data());
        novelty[i] = _scorer.mean_knn(coords.data(), ind.id, _config.k);
    }
    return novelty;
}

void NoveltySearch::step() {
    // offspring: uniform parent choice + Gaussian mutation
    const auto parents = parent_pool();
    std::vector<Individual> offspring;
    offspring.reserve(_config.offspring_size);
    for (std::size_t j = 0; j < _config.offspring_size; ++j) {
        const Individual& parent = *parents[_rng.uniform_below(parents.size())];
        Genotype g = gaussian_mutate(parent.genotype, _config.sigma, _rng,
                                     _env.genotype_bounds());
        Evaluation eval = _env.evaluate(g);
        offspring.push_back(Individual{_next_id++, std::move(g), std::move(eval.behavior),
                                       std::move(eval.aux), _generation + 1});
    }

    const std::vector<double> novelty = score_combined(offspring);
    if (_verify.oracle_interval > 0 && (_generation + 1) % _verify.oracle_interval == 0)
        check_with_oracle(offspring, novelty);

    // (M+N) truncation on novelty, ties by ascending id
    std::vector<std::size_t> order(novelty.size());
    std::iota(order.begin(), order.end(), 0);
    auto ind_at = [&](std::size_t i) -> const Individual& {
        return i < _population.size() ? _population[i] : offspring[i - _population.size()];
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (novelty[a] != novelty[b])
            return novelty[a] > novelty[b];
        return ind_at(a).id < ind_at(b).id;
    });

    std::vector<Individual> next_population;
    std::vector<double> next_novelty;
    next_population.reserve(_config.population_size);
    for (std::size_t i = 0; i < _config.population_size && i < order.size(); ++i) {
        next_population.push_back(ind_at(order[i]));
        next_novelty.push_back(novelty[order[i]]);
    }

    std::vector<double> offspring_novelty(novelty.begin() +
                                              static_cast<std::ptrdiff_t>(_population.size()),
                                          novelty.end());
    update_archive(offspring, offspring_novelty);

    _population = std::move(next_population);
    _population_novelty = std::move(next_novelty);
    _last_novelty_mean =
        std::accumulate(_population_novelty.begin(), _population_novelty.end(), 0.0) /
        static_cast<double>(_population.size());
    ++_generation;

    if (_verify.invariants)
        check_invariants();
}

void NoveltySearch::update_archive(const std::vector<Individual>& offspring,
                                   const std::vector<double>& offspring_novelty) {
    if (_config.archive.kind == ArchiveSpec::Kind::none || offspring.empty())
        return;

    if (_grid) {
        for (const auto& ind : offspring)
            _grid->insert(ind, _rng);
        return;
    }

    // most-novel inserts first, then uniformly random picks among the rest
    std::vector<std::size_t> order(offspring.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (offspring_novelty[a] != offspring_novelty[b])
            return offspring_novelty[a] > offspring_novelty[b];
        return offspring[a].id < offspring[b].id;
    });
    const std::size_t novel_count = std::min(_config.archive.add_most_novel, offspring.size());
    for (std::size_t i = 0; i < novel_count; ++i)
        _unstructured->insert(offspring[order[i]], _rng);

    std::vector<Individual> rest;
    rest.reserve(offspring.size() - novel_count);
    for (std::size_t i = novel_count; i < order.size(); ++i)
        rest.push_back(offspring[order[i]]);
    std::sort(rest.begin(), rest.end(),
              [](const Individual& a, const Individual& b) { return a.id < b.id; });
    _unstructured->insert_random(rest, std::min(_config.archive.add_random, rest.size()), _rng);
}

std::vector<Individual> NoveltySearch::archive_snapshot() const {
    if (_unstructured)
        return _unstructured->members();
    if (_grid)
        return _grid->occupants();
    return {};
}

std::size_t NoveltySearch::archive_size() const {
    if (_unstructured)
        return _unstructured->size();
    if (_grid)
        return _grid->occupied_count();
    return 0;
}

void NoveltySearch::check_invariants() const {
    if (_population.size() != _config.population_size)
        throw std::logic_error("ns invariant: population size drifted");
    if (_unstructured && _unstructured->max_size() &&
        _unstructured->size() > *_unstructured->max_size())
        throw std::logic_error("ns invariant: archive capacity exceeded");
    if (_grid) {
        for (const std::size_t cell : _grid->occupied_cells()) {
            const auto& occ = _grid->cell(cell);
            if (!occ || _grid->cell_index(occ->behavior) != cell)
                throw std::logic_error("ns invariant: grid occupant in wrong cell");
        }
    }
}

void NoveltySearch::check_with_oracle(const std::vector<Individual>& offspring,
                                      const std::vector<double>& novelty) const {
    const std::size_t dim = metric_dim(_config.metric, _env.behavior_dim());
    std::vector<std::vector<double>> pool;
    std::vector<std::uint64_t> ids;
    auto add = [&](const Individual& ind) {
        std::vector<double> coords(dim);
        metric_project(_config.metric, ind, coords.data());
        pool.push_back(std::move(coords));
        ids.push_back(ind.id);
    };
    for (const auto& ind : _population)
        add(ind);
    for (const auto& ind : offspring)
        add(ind);
    for (const auto& ind : archive_snapshot())
        add(ind);

    for (std::size_t i = 0; i < novelty.size(); ++i) {
        const double expect = oracle::knn_mean_distance_full_scan(
            pool[i], ids[i], pool, ids, _config.k);
        if (expect != novelty[i])
            throw std::logic_error("ns verification: novelty disagrees with full-scan oracle");
    }
}

} // namespace qds
