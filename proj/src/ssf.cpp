#include "qds/env/ssf.hpp"

#include <cmath>
#include <stdexcept>

namespace qds {

namespace {

double band_increment(int i) {
    // width added when moving from R_{i-1} to R_i
    const double j = (i % 2 == 1) ? static_cast<double>(i / 2)
                                  : static_cast<double>(i / 2 - 1);
    return 2.0 * j * j * j + 1.0;
}

} // namespace

double ssf_radius(int i) {
    if (i < 0)
        throw std::invalid_argument("ssf_radius: index must be >= 0");
    double r = 0.0;
    for (int m = 1; m <= i; ++m)
        r += band_increment(m);
    return r;
}

SsfBand ssf_locate_band(double r) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("ssf_locate_band: radius must be finite and >= 0");
    double radius = 0.0;
    int index = 0;
    while (true) {
        const double next = radius + band_increment(index + 1);
        if (r < next)
            return {index, radius};
        radius = next;
        ++index;
    }
}

int ssf_plateau_index(double b) {
    const SsfBand band = ssf_locate_band(b);
    return (band.index % 2 == 1) ? band.index / 2 : band.index / 2 - 1;
}

SsfEnv::SsfEnv(const Params& params) : _params(params), _name("ssf") {
    if (_params.order < 1)
        throw std::invalid_argument("ssf: order must be >= 1");
    if (_params.max_band_index < 1)
        throw std::invalid_argument("ssf: max_band_index must be >= 1");
    _binning_max = ssf_radius(9);
}

std::size_t SsfEnv::behavior_dim() const {
    return _params.output_mode == OutputMode::radial_scalar
               ? 1
               : static_cast<std::size_t>(_params.order);
}

Evaluation SsfEnv::evaluate(const Genotype& g) const {
    if (g.size() != genotype_dim())
        throw std::invalid_argument("ssf: genotype dimension mismatch");
    double sq = 0.0;
    for (const double v : g)
        sq += v * v;
    const double r = std::sqrt(sq);
    const SsfBand band = ssf_locate_band(r);

    const bool plateau = band.index % 2 == 1;
    const double scalar = plateau ? band.radius : r;

    Evaluation eval;
    eval.aux = {scalar};
    if (_params.output_mode == OutputMode::radial_scalar) {
        eval.behavior = {scalar};
    } else if (!plateau) {
        eval.behavior = g;
    } else {
        // project onto the sphere of the plateau radius (r >= R_1 > 0 here)
        const double scale = band.radius / r;
        eval.behavior.resize(g.size());
        for (std::size_t i = 0; i < g.size(); ++i)
            eval.behavior[i] = g[i] * scale;
    }
    return eval;
}

std::vector<Genotype> SsfEnv::initial_population(std::size_t count, double /*sigma*/,
                                                 RandomSource& /*rng*/) const {
    return std::vector<Genotype>(count, Genotype(genotype_dim(), 0.0));
}

} // namespace qds
