#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qds/random.hpp"
#include "qds/types.hpp"

namespace qds {

struct Evaluation {
    Behavior behavior;
    std::vector<double> aux; // environment extras cached on the individual
};

/// Deterministic genotype -> behavior mapping plus the declared search
/// domain. evaluate() is pure: a genotype always produces the bitwise-same
/// behavior, and instances are immutable after construction, so one
/// environment can serve any number of concurrent runs.
class Environment {
public:
    virtual ~Environment() = default;

    virtual const std::string& name() const = 0;
    virtual std::size_t genotype_dim() const = 0;
    virtual std::size_t behavior_dim() const = 0;

    /// Per-coordinate bounds; empty when the genotype space is unbounded.
    virtual const Bounds& genotype_bounds() const = 0;

    virtual Evaluation evaluate(const Genotype& g) const = 0;

    /// Scalar used for coverage binning and the max-behavior series. Chosen
    /// so that bins partition the reachable behavior set evenly: arc length
    /// for the spiral, radial behavior for SSF, the density value for the
    /// deceptive mixture.
    virtual double binning_value(const Individual& ind) const = 0;

    /// Upper end of the reachable binning interval (lower end is 0 for all
    /// three environments).
    virtual double binning_domain_max() const = 0;

    /// Population initialization scheme. sigma is the mutation standard
    /// deviation of the run (only the deceptive environment draws on it).
    virtual std::vector<Genotype> initial_population(std::size_t count, double sigma,
                                                     RandomSource& rng) const = 0;
};

} // namespace qds
