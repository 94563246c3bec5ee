#include "invwave/kernels.hpp"

#include "invwave/errors.hpp"

namespace invwave::kernels {

bool avx2_supported() {
#if defined(INVWAVE_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

Backend pick_default() {
    return avx2_supported() ? Backend::Avx2 : Backend::Scalar;
}

Backend& current() {
    static Backend b = pick_default();
    return b;
}

}  // namespace

Backend active_backend() {
    return current();
}

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !avx2_supported()) {
        throw Error("kernels: AVX2 backend requested but not supported on this CPU");
    }
    current() = b;
}

std::string backend_name(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

void laplacian_zero_flux(const double* f, double* out, std::size_t n, double inv_dx2) {
#if defined(INVWAVE_HAVE_AVX2)
    if (current() == Backend::Avx2) {
        avx2::laplacian_zero_flux(f, out, n, inv_dx2);
        return;
    }
#endif
    scalar::laplacian_zero_flux(f, out, n, inv_dx2);
}

void axpy(const double* x, double a, const double* y, double* out, std::size_t n) {
#if defined(INVWAVE_HAVE_AVX2)
    if (current() == Backend::Avx2) {
        avx2::axpy(x, a, y, out, n);
        return;
    }
#endif
    scalar::axpy(x, a, y, out, n);
}

void rk4_combine(const double* y, const double* k1, const double* k2, const double* k3,
                 const double* k4, double s, double* out, std::size_t n) {
#if defined(INVWAVE_HAVE_AVX2)
    if (current() == Backend::Avx2) {
        avx2::rk4_combine(y, k1, k2, k3, k4, s, out, n);
        return;
    }
#endif
    scalar::rk4_combine(y, k1, k2, k3, k4, s, out, n);
}

double clamp_nonnegative(double* f, std::size_t n) {
#if defined(INVWAVE_HAVE_AVX2)
    if (current() == Backend::Avx2) {
        return avx2::clamp_nonnegative(f, n);
    }
#endif
    return scalar::clamp_nonnegative(f, n);
}

}  // namespace invwave::kernels
