#pragma once

#include <array>

#include "qds/env/environment.hpp"

namespace qds {

/// Deceptive-Evolvability-v0: the behavior is the value of an unnormalized
/// two-component isotropic Gaussian mixture over the square [0,L]^2. The
/// sharp first component has far higher gradients, so populations
/// initialized at the saddle between the modes are pulled towards it even
/// though only the wide second component reaches the top of the behavior
/// interval.
class DeceptiveEnv final : public Environment {
public:
    struct Params {
        double side = 600.0;                         // L
        std::array<double, 2> mu1 = {150.0, 300.0};
        std::array<double, 2> mu2 = {450.0, 300.0};
        double var1 = 70.0;                          // sigma_1^2
        double var2 = 1e4;                           // sigma_2^2
        /// Mixture weight of the second component. The default makes the
        /// mixture value at mu2 about 1.5x the value at mu1, placing the
        /// deceptive interval (M1, M2] at roughly one third of the
        /// reachable behavior space.
        double beta = 1.5 * (1e4 / 70.0);
        /// Downgrades a failed argmax validation (phi(mu2) <= phi(mu1)) from
        /// a construction error to a recorded warning.
        bool allow_invalid_argmax = false;
    };

    explicit DeceptiveEnv(const Params& params);

    const std::string& name() const override { return _name; }
    std::size_t genotype_dim() const override { return 2; }
    std::size_t behavior_dim() const override { return 1; }
    const Bounds& genotype_bounds() const override { return _bounds; }
    Evaluation evaluate(const Genotype& g) const override;
    double binning_value(const Individual& ind) const override { return ind.behavior.at(0); }
    double binning_domain_max() const override { return _binning_max; }
    /// Draws around the saddle point: N(x_saddle, sigma^2 I), clamped into
    /// the square.
    std::vector<Genotype> initial_population(std::size_t count, double sigma,
                                             RandomSource& rng) const override;

    const Params& params() const { return _params; }

    /// Mixture density at a point (no bounds check).
    double density(double x, double y) const;
    std::array<double, 2> gradient(double x, double y) const;

    /// Saddle point between the modes, solved at construction.
    const std::array<double, 2>& saddle() const { return _saddle; }
    /// Full-mixture value at mu1: the top of the behavior interval reachable
    /// by climbing the first mode.
    double m1() const { return _m1; }
    /// Full-mixture value at mu2: the top of the reachable interval.
    double m2_total() const { return _m2_total; }
    /// Single-component peak values 1/(2 pi var_i) (beta not applied),
    /// recorded alongside the full-mixture convention.
    double m1_component() const;
    double m2_component() const;
    bool argmax_valid() const { return _argmax_valid; }

private:
    Params _params;
    std::string _name = "deceptive";
    Bounds _bounds;
    std::array<double, 2> _saddle{};
    double _m1 = 0.0;
    double _m2_total = 0.0;
    double _binning_max = 0.0;
    bool _argmax_valid = false;
};

/// Interior stationary point of the mixture on the open segment (mu1, mu2):
/// zero gradient, indefinite Hessian. Throws when the mixture is degenerate
/// (no interior minimum of the density along the segment).
std::array<double, 2> find_saddle(const DeceptiveEnv& env);

/// (M1, M2_total): the split point and top of the reachable behavior
/// interval used for binning.
std::pair<double, double> reachable_interval(const DeceptiveEnv& env);

} // namespace qds
