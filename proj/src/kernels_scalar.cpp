#include "qds/kernels.hpp"

#include <cmath>

namespace qds::kernels::detail {

void abs_diff_scalar(double q, const double* xs, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::fabs(xs[i] - q);
}

void euclidean2_scalar(double qx, double qy, const double* xs, const double* ys,
                       std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - qx;
        const double dy = ys[i] - qy;
        out[i] = std::sqrt(dx * dx + dy * dy);
    }
}

} // namespace qds::kernels::detail
