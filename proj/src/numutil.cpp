#include "invwave/numutil.hpp"

#include <algorithm>
#include <cmath>

namespace invwave::detail {

namespace {

// Golden-section search for the maximum of f on [a, b].
GridExtremum golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

}  // namespace

GridExtremum grid_max(const std::function<double(double)>& f, double lo, double hi, std::size_t n,
                      double tol) {
    if (n < 2 || hi <= lo) {
        return {lo, f(lo)};
    }
    const double h = (hi - lo) / static_cast<double>(n - 1);
    GridExtremum best{lo, f(lo)};
    std::size_t best_i = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double x = lo + h * static_cast<double>(i);
        const double y = f(x);
        if (y > best.value) {
            best = {x, y};
            best_i = i;
        }
    }
    const double a = lo + h * static_cast<double>(best_i == 0 ? 0 : best_i - 1);
    const double b = std::min(hi, lo + h * static_cast<double>(best_i + 1));
    GridExtremum polished = golden_max(f, a, b, tol);
    return polished.value > best.value ? polished : best;
}

GridExtremum grid_min(const std::function<double(double)>& f, double lo, double hi, std::size_t n,
                      double tol) {
    auto neg = [&f](double x) { return -f(x); };
    GridExtremum m = grid_max(neg, lo, hi, n, tol);
    return {m.arg, -m.value};
}

}  // namespace invwave::detail
