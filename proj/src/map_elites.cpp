#include "qds/algo/map_elites.hpp"

#include <stdexcept>

#include "qds/mutation.hpp"

namespace qds {

MapElites::MapElites(const Environment& env, const MapElitesConfig& config,
                     RandomSource& rng, bool verify_invariants)
    : _env(env), _config(config), _rng(rng), _verify_invariants(verify_invariants),
      _grid(config.grid_dims, config.replace_at_random
                                  ? GridArchive::Policy::replace_at_random
                                  : GridArchive::Policy::keep_first) {
    if (_config.batch_size < 1)
        throw std::invalid_argument("map-elites: batch size must be >= 1");
    if (_config.initial_batch < 1)
        throw std::invalid_argument("map-elites: initial batch must be >= 1");
    if (!(_config.sigma > 0.0))
        throw std::invalid_argument("map-elites: sigma must be positive");
}

void MapElites::initialize() {
    auto genotypes = _env.initial_population(_config.initial_batch, _config.sigma, _rng);
    for (auto& g : genotypes) {
        Evaluation eval = _env.evaluate(g);
        _grid.insert(Individual{_next_id++, std::move(g), std::move(eval.behavior),
                                std::move(eval.aux), 0},
                     _rng);
    }
    _generation = 0;
}

void MapElites::step() {
    if (_grid.empty())
        throw std::invalid_argument("map-elites: generation step on an empty grid");

    // parents all drawn from the generation-start archive
    std::vector<Individual> parents = _grid.sample(_config.batch_size, _rng);
    for (const auto& parent : parents) {
        Genotype g = gaussian_mutate(parent.genotype, _config.sigma, _rng,
                                     _env.genotype_bounds());
        Evaluation eval = _env.evaluate(g);
        _grid.insert(Individual{_next_id++, std::move(g), std::move(eval.behavior),
                                std::move(eval.aux), _generation + 1},
                     _rng);
    }
    ++_generation;

    if (_verify_invariants)
        check_invariants();
}

void MapElites::check_invariants() const {
    for (const std::size_t cell : _grid.occupied_cells()) {
        const auto& occ = _grid.cell(cell);
        if (!occ || _grid.cell_index(occ->behavior) != cell)
            throw std::logic_error("map-elites invariant: grid occupant in wrong cell");
    }
}

} // namespace qds
