#include "qds/metric.hpp"

#include <cmath>

#include "qds/kernels.hpp"

namespace qds {

double euclidean_distance(const Behavior& a, const Behavior& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("euclidean_distance: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::size_t metric_dim(const DistanceMetric& metric, std::size_t behavior_dim) {
    return metric.kind == DistanceMetric::Kind::geodesic_spiral ? 1 : behavior_dim;
}

void metric_project(const DistanceMetric& metric, const Individual& ind, double* out) {
    if (metric.kind == DistanceMetric::Kind::geodesic_spiral) {
        if (ind.aux.size() < 2)
            throw std::invalid_argument(
                "geodesic-spiral metric requires spiral-evaluated individuals");
        out[0] = ind.aux[1]; // cached arc length
        return;
    }
    for (std::size_t i = 0; i < ind.behavior.size(); ++i)
        out[i] = ind.behavior[i];
}

double metric_distance(const DistanceMetric& metric, const Individual& a,
                       const Individual& b) {
    if (metric.kind == DistanceMetric::Kind::geodesic_spiral) {
        double pa, pb;
        metric_project(metric, a, &pa);
        metric_project(metric, b, &pb);
        return std::fabs(pa - pb);
    }
    return euclidean_distance(a.behavior, b.behavior);
}

} // namespace qds
