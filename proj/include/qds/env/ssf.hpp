#pragma once

#include "qds/env/environment.hpp"

namespace qds {

/// Band radii of SSF-v0: R_0 = 0 and alternating increments
///   R_i = R_{i-1} + 2*floor(i/2)^3 + 1       (i odd)
///   R_i = R_{i-1} + 2*(floor(i/2) - 1)^3 + 1 (i even),
/// so [R_2j, R_2j+1) is a linear band and [R_2j+1, R_2j+2) a plateau, both
/// of width 2j^3 + 1.
double ssf_radius(int i);

/// Largest band index m with R_m <= r, and that radius. Walks past any
/// precomputed prefix on demand; never fails for finite r >= 0.
struct SsfBand {
    int index;      // even: linear band index/2; odd: plateau (index-1)/2
    double radius;  // R_index
};
SsfBand ssf_locate_band(double r);

/// Plateau progress for a radial behavior value b: the index of the plateau
/// b lies on, or of the last fully crossed plateau when b is inside a linear
/// band; -1 before the first plateau.
int ssf_plateau_index(double b);

/// SSF-v0 of order N: unbounded genotype space R^N, behavior radially
/// self-similar with plateaus of cubically growing width.
///
/// Individual::aux layout: {radial scalar behavior}.
class SsfEnv final : public Environment {
public:
    enum class OutputMode { radial_scalar, vector_projection };

    struct Params {
        int order = 1;              // genotype dimensionality N
        int max_band_index = 64;    // precomputed R_i prefix
        OutputMode output_mode = OutputMode::radial_scalar;
    };

    explicit SsfEnv(const Params& params);

    const std::string& name() const override { return _name; }
    std::size_t genotype_dim() const override { return static_cast<std::size_t>(_params.order); }
    std::size_t behavior_dim() const override;
    const Bounds& genotype_bounds() const override { return _bounds; } // empty: unbounded
    Evaluation evaluate(const Genotype& g) const override;
    double binning_value(const Individual& ind) const override { return ind.aux.at(0); }
    double binning_domain_max() const override { return _binning_max; }
    std::vector<Genotype> initial_population(std::size_t count, double sigma,
                                             RandomSource& rng) const override;

    const Params& params() const { return _params; }

private:
    Params _params;
    std::string _name;
    Bounds _bounds; // empty
    double _binning_max;
};

} // namespace qds
