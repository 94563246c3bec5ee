#pragma once

#include <cstddef>
#include <string>

namespace invwave::kernels {

// Vector kernels for the grid inner loops. Two backends: a scalar reference
// and an AVX2 variant selected at runtime. Both use the same per-element
// operation tree and the project builds with -ffp-contract=off, so results
// are bit-identical between backends (the equivalence tests assert exactly
// that). The clamp mass reduction is the one exception: lane-wise partial
// sums reassociate the addition, so the returned mass is diagnostic only.
enum class Backend { Scalar, Avx2 };

// Backend chosen from CPU capabilities at startup.
Backend active_backend();
// Force a backend (tests). Throws invwave::Error if unsupported on this CPU.
void set_backend(Backend b);
bool avx2_supported();
std::string backend_name(Backend b);

// out[i] = second difference of f with mirrored ghost nodes at both ends,
// scaled by inv_dx2. Endpoints: 2*(f[1]-f[0])*inv_dx2 and symmetric.
// Requires n >= 3.
void laplacian_zero_flux(const double* f, double* out, std::size_t n, double inv_dx2);

// out[i] = x[i] + a*y[i]
void axpy(const double* x, double a, const double* y, double* out, std::size_t n);

// out[i] = y[i] + s*((k1[i] + 2*k2[i]) + (2*k3[i] + k4[i])), s = dt/6
void rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                 const double* k4, double s, double* out, std::size_t n);

// Clamp negative entries to zero in place; returns the clamped mass
// (sum of the magnitudes removed). Diagnostic value, see note above.
double clamp_nonnegative(double* f, std::size_t n);

// Reference implementations, always available (equivalence oracle).
namespace scalar {
void laplacian_zero_flux(const double* f, double* out, std::size_t n, double inv_dx2);
void axpy(const double* x, double a, const double* y, double* out, std::size_t n);
void rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                 const double* k4, double s, double* out, std::size_t n);
double clamp_nonnegative(double* f, std::size_t n);
}  // namespace scalar

#if defined(INVWAVE_HAVE_AVX2)
namespace avx2 {
void laplacian_zero_flux(const double* f, double* out, std::size_t n, double inv_dx2);
void axpy(const double* x, double a, const double* y, double* out, std::size_t n);
void rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                 const double* k4, double s, double* out, std::size_t n);
double clamp_nonnegative(double* f, std::size_t n);
}  // namespace avx2
#endif

}  // namespace invwave::kernels
