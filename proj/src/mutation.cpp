#include "qds/mutation.hpp"

#include <algorithm>
#include <stdexcept>

namespace qds {

Genotype gaussian_mutate(const Genotype& g, double sigma, RandomSource& rng,
                         const Bounds& bounds) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("gaussian_mutate: sigma must be positive");
    if (!bounds.empty() && bounds.size() != g.size())
        throw std::invalid_argument("gaussian_mutate: bounds/genotype dimension mismatch");

    Genotype out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double v = g[i] + sigma * rng.normal();
        if (!bounds.empty())
            v = std::min(bounds[i].hi, std::max(bounds[i].lo, v));
        out[i] = v;
    }
    return out;
}

} // namespace qds
