#pragma once

#include <cstddef>
#include <string>

namespace qds::kernels {

/// Batch distance kernels used by the novelty inner loop. Each kernel exists
/// as a scalar reference and (on x86-64 with AVX2) a vectorized variant; the
/// backend is picked once at startup from CPUID and can be forced with
/// set_backend() or the QDS_KERNELS environment variable ("scalar"/"avx2").
///
/// Both variants perform the identical sequence of IEEE-754 operations
/// (sub/mul/add/sqrt, no FMA), so their outputs are bit-identical; the test
/// suite asserts this, and run reproducibility does not depend on the
/// backend in use.
enum class Backend { scalar, avx2 };

Backend active_backend();
void set_backend(Backend b);
bool backend_available(Backend b);
std::string backend_name(Backend b);

/// out[i] = |xs[i] - q|
void abs_diff(double q, const double* xs, std::size_t n, double* out);

/// out[i] = sqrt((xs[i]-qx)^2 + (ys[i]-qy)^2)
void euclidean2(double qx, double qy, const double* xs, const double* ys,
                std::size_t n, double* out);

/// out[i] = l2 distance from q to row i of the n-by-dim row-major array pts.
/// Scalar only; used for behavior dimensions above 2.
void euclidean_nd(const double* q, const double* pts, std::size_t n,
                  std::size_t dim, double* out);

namespace detail {
void abs_diff_scalar(double q, const double* xs, std::size_t n, double* out);
void euclidean2_scalar(double qx, double qy, const double* xs, const double* ys,
                       std::size_t n, double* out);
#if defined(__x86_64__) || defined(_M_X64)
void abs_diff_avx2(double q, const double* xs, std::size_t n, double* out);
void euclidean2_avx2(double qx, double qy, const double* xs, const double* ys,
                     std::size_t n, double* out);
#endif
} // namespace detail

} // namespace qds::kernels
