#include "qds/env/spiral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qds {

Behavior spiral_point(double t, double a) {
    if (t < 0.0)
        throw std::invalid_argument("spiral_point: t must be >= 0");
    return {a * t * std::cos(t), a * t * std::sin(t)};
}

namespace {

// antiderivative of sqrt(t^2+1), scaled by a/2 in arc_length
double arc_antiderivative(double t) {
    const double root = std::sqrt(t * t + 1.0);
    return t * root + std::asinh(t);
}

} // namespace

double arc_length(double t1, double t2, double a) {
    if (t1 < 0.0 || t1 > t2)
        throw std::invalid_argument("arc_length: requires 0 <= t1 <= t2");
    return 0.5 * a * (arc_antiderivative(t2) - arc_antiderivative(t1));
}

double invert_arc_length(double s, double a) {
    if (s < 0.0)
        throw std::invalid_argument("invert_arc_length: s must be >= 0");
    if (!(a > 0.0))
        throw std::invalid_argument("invert_arc_length: a must be positive");
    if (s == 0.0)
        return 0.0;

    // bracket: S(0,t) >= a*t/... grows superlinearly, double hi until past s
    double lo = 0.0;
    double hi = std::max(1.0, s / a);
    while (arc_length(0.0, hi, a) < s)
        hi *= 2.0;

    // Newton with bisection safeguard; f(t) = S(0,t) - s, f'(t) = a*sqrt(t^2+1)
    double t = std::sqrt(2.0 * s / a); // large-t asymptote S ~ a t^2 / 2
    if (!(t > lo && t < hi))
        t = 0.5 * (lo + hi);
    const double tol = 1e-10 * (1.0 + s);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = arc_length(0.0, t, a) - s;
        if (std::fabs(f) <= tol)
            return t;
        if (f > 0.0)
            hi = t;
        else
            lo = t;
        const double deriv = a * std::sqrt(t * t + 1.0);
        double next = t - f / deriv;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (next == t)
            return t;
        t = next;
    }
    return t;
}

double spiral_geodesic_distance(double t1, double t2, double a) {
    return std::fabs(arc_length(0.0, std::max(t1, t2), a) -
                     arc_length(0.0, std::min(t1, t2), a));
}

SpiralEnv::SpiralEnv(const Params& params) : _params(params) {
    if (!(_params.a > 0.0))
        throw std::invalid_argument("spiral: a must be positive");
    if (!(_params.alpha > 0.0))
        throw std::invalid_argument("spiral: alpha must be positive");
    _max_angle = _params.alpha * std::numbers::pi;
    _total_arc_length = arc_length(0.0, _max_angle, _params.a);
    _start_angle = _params.start_angle.value_or(0.5 * _max_angle);
    if (_start_angle < 0.0 || _start_angle > _max_angle)
        throw std::invalid_argument("spiral: start angle outside [0, alpha*pi]");

    const bool angle_mode = _params.parametrization == Parametrization::angle;
    _name = angle_mode ? "spiral-angle" : "spiral-arclength";
    _bounds = {Interval{0.0, angle_mode ? _max_angle : _total_arc_length}};
    _start_genotype =
        angle_mode ? _start_angle : arc_length(0.0, _start_angle, _params.a);
}

Evaluation SpiralEnv::evaluate(const Genotype& g) const {
    if (g.size() != 1)
        throw std::invalid_argument("spiral: genotype dimension must be 1");
    const double hi = _bounds[0].hi;
    if (g[0] < 0.0 || g[0] > hi)
        throw std::invalid_argument("spiral: genotype outside declared bounds");

    double t, s;
    if (_params.parametrization == Parametrization::angle) {
        t = g[0];
        s = arc_length(0.0, t, _params.a);
    } else {
        s = g[0];
        t = invert_arc_length(s, _params.a);
    }
    return {spiral_point(t, _params.a), {t, s}};
}

double SpiralEnv::binning_value(const Individual& ind) const {
    return ind.aux.at(1); // arc length: bins are uniform along the curve
}

std::vector<Genotype> SpiralEnv::initial_population(std::size_t count, double /*sigma*/,
                                                    RandomSource& /*rng*/) const {
    return std::vector<Genotype>(count, Genotype{_start_genotype});
}

} // namespace qds
