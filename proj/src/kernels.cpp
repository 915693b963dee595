#include "qds/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace qds::kernels {

namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend detect_backend() {
    if (const char* env = std::getenv("QDS_KERNELS")) {
        const std::string v(env);
        if (v == "scalar")
            return Backend::scalar;
        if (v == "avx2" && cpu_has_avx2())
            return Backend::avx2;
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

Backend g_backend = detect_backend();

} // namespace

Backend active_backend() { return g_backend; }

bool backend_available(Backend b) {
    return b == Backend::scalar || cpu_has_avx2();
}

void set_backend(Backend b) {
    if (!backend_available(b))
        throw std::runtime_error("kernel backend not available on this CPU: " + backend_name(b));
    g_backend = b;
}

std::string backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

void abs_diff(double q, const double* xs, std::size_t n, double* out) {
#if defined(__x86_64__) || defined(_M_X64)
    if (g_backend == Backend::avx2) {
        detail::abs_diff_avx2(q, xs, n, out);
        return;
    }
#endif
    detail::abs_diff_scalar(q, xs, n, out);
}

void euclidean2(double qx, double qy, const double* xs, const double* ys,
                std::size_t n, double* out) {
#if defined(__x86_64__) || defined(_M_X64)
    if (g_backend == Backend::avx2) {
        detail::euclidean2_avx2(qx, qy, xs, ys, n, out);
        return;
    }
#endif
    detail::euclidean2_scalar(qx, qy, xs, ys, n, out);
}

void euclidean_nd(const double* q, const double* pts, std::size_t n,
                  std::size_t dim, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double* p = pts + i * dim;
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = p[d] - q[d];
            acc += diff * diff;
        }
        out[i] = std::sqrt(acc);
    }
}

} // namespace qds::kernels
