#pragma once

#include <optional>

#include "qds/env/environment.hpp"

namespace qds {

/// Point on the Archimedean spiral r = a*t at angle t.
Behavior spiral_point(double t, double a);

/// Length of curve between angles t1 <= t2, closed form.
double arc_length(double t1, double t2, double a);

/// Inverse of s = arc_length(0, t, a): safeguarded Newton iteration on the
/// monotone closed form with a bisection fallback. The residual satisfies
/// |arc_length(0,t,a) - s| <= 1e-10 * (1 + s).
double invert_arc_length(double s, double a);

/// Distance along the curve between the behaviors generated at angles t1
/// and t2.
double spiral_geodesic_distance(double t1, double t2, double a);

/// Archimedean-Spiral-v0. The 1-D genotype parametrizes the curve either by
/// angle (interval [0, alpha*pi], Gaussian mutations map to steps that are
/// wider in arc length towards the exterior) or by arc length (interval
/// [0, S(0, alpha*pi)], mutations are unbiased along the curve). Both
/// parametrizations reach the same set of 2-D behaviors.
///
/// Individual::aux layout: {angle t, arc length s}.
class SpiralEnv final : public Environment {
public:
    enum class Parametrization { angle, arc_length };

    struct Params {
        double a = 0.01;
        double alpha = 30.0; // angle range is [0, alpha*pi]
        Parametrization parametrization = Parametrization::angle;
        /// Start angle for population initialization; default is the middle
        /// of the angle interval (both parametrizations then start at the
        /// same curve point).
        std::optional<double> start_angle;
    };

    explicit SpiralEnv(const Params& params);

    const std::string& name() const override { return _name; }
    std::size_t genotype_dim() const override { return 1; }
    std::size_t behavior_dim() const override { return 2; }
    const Bounds& genotype_bounds() const override { return _bounds; }
    Evaluation evaluate(const Genotype& g) const override;
    double binning_value(const Individual& ind) const override;
    double binning_domain_max() const override { return _total_arc_length; }
    std::vector<Genotype> initial_population(std::size_t count, double sigma,
                                             RandomSource& rng) const override;

    const Params& params() const { return _params; }
    double max_angle() const { return _max_angle; }
    double total_arc_length() const { return _total_arc_length; }
    double start_angle() const { return _start_angle; }
    /// Start value expressed in this instance's genotype coordinate.
    double start_genotype() const { return _start_genotype; }
    /// Outer radius of the curve; the 2-D behavior set fits in
    /// [-r, r] x [-r, r].
    double outer_radius() const { return _params.a * _max_angle; }

private:
    Params _params;
    std::string _name;
    Bounds _bounds;
    double _max_angle;
    double _total_arc_length;
    double _start_angle;
    double _start_genotype;
};

} // namespace qds
