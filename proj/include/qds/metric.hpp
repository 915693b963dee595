#pragma once

#include <cstddef>
#include <stdexcept>

#include "qds/types.hpp"

namespace qds {

/// Behavior-space distance contract. Both kinds reduce to a Euclidean
/// distance in a projected coordinate space:
///   - euclidean: the behavior descriptor itself (D coordinates);
///   - geodesic_spiral: the 1-D arc-length coordinate the spiral environment
///     caches in Individual::aux, so the distance between two on-curve
///     behaviors is the length of curve between them.
struct DistanceMetric {
    enum class Kind { euclidean, geodesic_spiral };
    Kind kind = Kind::euclidean;
    double spiral_a = 0.0; // geodesic parameter; informational

    static DistanceMetric euclidean() { return {}; }
    static DistanceMetric geodesic_spiral_metric(double a) {
        return {Kind::geodesic_spiral, a};
    }
};

double euclidean_distance(const Behavior& a, const Behavior& b);

/// Coordinates the metric measures in; dim 1 for the geodesic projection.
std::size_t metric_dim(const DistanceMetric& metric, std::size_t behavior_dim);

/// Writes metric_dim() coordinates for one individual into out.
void metric_project(const DistanceMetric& metric, const Individual& ind, double* out);

double metric_distance(const DistanceMetric& metric, const Individual& a,
                       const Individual& b);

} // namespace qds
