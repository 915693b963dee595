#include "qds/env/deceptive.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qds {

namespace {

struct SegmentMixture {
    // density restricted to the segment mu1 + u*(mu2-mu1), u in [0,1]:
    // f(u) = A exp(-d^2 u^2 / (2 v1)) + B exp(-d^2 (1-u)^2 / (2 v2))
    double A, B, v1, v2, d2;

    double value(double u) const {
        return A * std::exp(-d2 * u * u / (2.0 * v1)) +
               B * std::exp(-d2 * (1.0 - u) * (1.0 - u) / (2.0 * v2));
    }
    double deriv(double u) const {
        const double w = 1.0 - u;
        return A * std::exp(-d2 * u * u / (2.0 * v1)) * (-d2 * u / v1) +
               B * std::exp(-d2 * w * w / (2.0 * v2)) * (d2 * w / v2);
    }
    double second(double u) const {
        const double w = 1.0 - u;
        const double e1 = std::exp(-d2 * u * u / (2.0 * v1));
        const double e2 = std::exp(-d2 * w * w / (2.0 * v2));
        return A * e1 * (d2 * d2 * u * u / (v1 * v1) - d2 / v1) +
               B * e2 * (d2 * d2 * w * w / (v2 * v2) - d2 / v2);
    }
};

double bisect_root(const SegmentMixture& mix, double lo, double hi) {
    double flo = mix.deriv(lo);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        const double fmid = mix.deriv(mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::array<double, 2> solve_saddle(const DeceptiveEnv::Params& p) {
    const double dx = p.mu2[0] - p.mu1[0];
    const double dy = p.mu2[1] - p.mu1[1];
    const double d2 = dx * dx + dy * dy;
    if (d2 == 0.0)
        throw std::invalid_argument("deceptive: mu1 and mu2 coincide");

    const SegmentMixture mix{1.0 / (2.0 * std::numbers::pi * p.var1),
                             p.beta / (2.0 * std::numbers::pi * p.var2),
                             p.var1, p.var2, d2};

    // sign changes of f' on a fine grid of (0,1)
    constexpr int kGrid = 4096;
    std::vector<double> roots;
    double u_prev = 1.0 / kGrid;
    double f_prev = mix.deriv(u_prev);
    for (int i = 2; i < kGrid; ++i) {
        const double u = static_cast<double>(i) / kGrid;
        const double f = mix.deriv(u);
        if ((f_prev <= 0.0) != (f <= 0.0))
            roots.push_back(bisect_root(mix, u_prev, u));
        u_prev = u;
        f_prev = f;
    }

    // keep the interior density minimum between the two along-segment maxima
    double best_u = -1.0;
    bool have_max_before = false;
    for (const double u : roots) {
        const double curv = mix.second(u);
        if (curv < 0.0) {
            have_max_before = true;
        } else if (curv > 0.0 && have_max_before && best_u < 0.0) {
            best_u = u;
        }
    }
    if (best_u < 0.0)
        throw std::invalid_argument(
            "deceptive: no interior saddle on the segment between the modes "
            "(degenerate mixture)");
    return {p.mu1[0] + best_u * dx, p.mu1[1] + best_u * dy};
}

} // namespace

DeceptiveEnv::DeceptiveEnv(const Params& params) : _params(params) {
    if (!(_params.side > 0.0))
        throw std::invalid_argument("deceptive: side length must be positive");
    if (!(_params.var1 > 0.0) || !(_params.var2 > 0.0))
        throw std::invalid_argument("deceptive: variances must be positive");
    if (!(_params.var1 < _params.var2))
        throw std::invalid_argument("deceptive: requires var1 < var2");
    if (!(_params.beta > 0.0))
        throw std::invalid_argument("deceptive: beta must be positive");
    for (const auto& mu : {_params.mu1, _params.mu2})
        for (const double c : mu)
            if (c < 0.0 || c > _params.side)
                throw std::invalid_argument("deceptive: component means must lie inside the square");

    _bounds = {Interval{0.0, _params.side}, Interval{0.0, _params.side}};
    _m1 = density(_params.mu1[0], _params.mu1[1]);
    _m2_total = density(_params.mu2[0], _params.mu2[1]);
    _argmax_valid = _m2_total > _m1;
    if (!_argmax_valid && !_params.allow_invalid_argmax)
        throw std::invalid_argument(
            "deceptive: argmax constraint violated: the mixture value at mu2 "
            "must exceed the value at mu1 (phi(mu1)=" + std::to_string(_m1) +
            ", phi(mu2)=" + std::to_string(_m2_total) +
            "); increase beta or pass allow_invalid_argmax");

    _saddle = solve_saddle(_params);
    _binning_max = std::max(_m1, _m2_total);
}

double DeceptiveEnv::density(double x, double y) const {
    const double d1x = x - _params.mu1[0];
    const double d1y = y - _params.mu1[1];
    const double d2x = x - _params.mu2[0];
    const double d2y = y - _params.mu2[1];
    const double q1 = (d1x * d1x + d1y * d1y) / (2.0 * _params.var1);
    const double q2 = (d2x * d2x + d2y * d2y) / (2.0 * _params.var2);
    const double p1 = 1.0 / (2.0 * std::numbers::pi * _params.var1);
    const double p2 = 1.0 / (2.0 * std::numbers::pi * _params.var2);
    return p1 * std::exp(-q1) + _params.beta * p2 * std::exp(-q2);
}

std::array<double, 2> DeceptiveEnv::gradient(double x, double y) const {
    const double p1 = 1.0 / (2.0 * std::numbers::pi * _params.var1);
    const double p2 = 1.0 / (2.0 * std::numbers::pi * _params.var2);
    const double d1x = x - _params.mu1[0];
    const double d1y = y - _params.mu1[1];
    const double d2x = x - _params.mu2[0];
    const double d2y = y - _params.mu2[1];
    const double t1 = p1 * std::exp(-(d1x * d1x + d1y * d1y) / (2.0 * _params.var1));
    const double t2 = _params.beta * p2 *
                      std::exp(-(d2x * d2x + d2y * d2y) / (2.0 * _params.var2));
    return {-d1x / _params.var1 * t1 - d2x / _params.var2 * t2,
            -d1y / _params.var1 * t1 - d2y / _params.var2 * t2};
}

double DeceptiveEnv::m1_component() const {
    return 1.0 / (2.0 * std::numbers::pi * _params.var1);
}

double DeceptiveEnv::m2_component() const {
    return 1.0 / (2.0 * std::numbers::pi * _params.var2);
}

Evaluation DeceptiveEnv::evaluate(const Genotype& g) const {
    if (g.size() != 2)
        throw std::invalid_argument("deceptive: genotype dimension must be 2");
    for (const double c : g)
        if (c < 0.0 || c > _params.side)
            throw std::invalid_argument("deceptive: genotype outside the square");
    return {{density(g[0], g[1])}, {}};
}

std::vector<Genotype> DeceptiveEnv::initial_population(std::size_t count, double sigma,
                                                       RandomSource& rng) const {
    std::vector<Genotype> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Genotype g(2);
        for (int c = 0; c < 2; ++c) {
            const double v = _saddle[static_cast<std::size_t>(c)] + sigma * rng.normal();
            g[static_cast<std::size_t>(c)] = std::min(_params.side, std::max(0.0, v));
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::array<double, 2> find_saddle(const DeceptiveEnv& env) {
    return solve_saddle(env.params());
}

std::pair<double, double> reachable_interval(const DeceptiveEnv& env) {
    return {env.m1(), env.m2_total()};
}

} // namespace qds
