#include "invwave/kernels.hpp"

namespace invwave::kernels::scalar {

void laplacian_zero_flux(const double* f, double* out, std::size_t n, double inv_dx2) {
    const double two = 2.0;
    out[0] = two * (f[1] - f[0]) * inv_dx2;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = ((f[i - 1] - two * f[i]) + f[i + 1]) * inv_dx2;
    }
    out[n - 1] = two * (f[n - 2] - f[n - 1]) * inv_dx2;
}

void axpy(const double* x, double a, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = x[i] + a * y[i];
    }
}

void rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                 const double* k4, double s, double* out, std::size_t n) {
    const double two = 2.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t1 = k1[i] + two * k2[i];
        const double t2 = two * k3[i] + k4[i];
        out[i] = y[i] + s * (t1 + t2);
    }
}

double clamp_nonnegative(double* f, std::size_t n) {
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        // <= so that -0.0 is normalized to +0.0, matching the vector max.
        if (f[i] <= 0.0) {
            mass -= f[i];
            f[i] = 0.0;
        }
    }
    return mass;
}

}  // namespace invwave::kernels::scalar
