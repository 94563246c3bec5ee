#pragma once

#include <cstddef>
#include <functional>

namespace invwave::detail {

struct GridExtremum {
    double arg = 0.0;
    double value = 0.0;
};

// Max of f over [lo, hi]: n-point uniform sample, then golden-section polish
// of the bracket around the best node down to `tol` in the argument.
GridExtremum grid_max(const std::function<double(double)>& f, double lo, double hi, std::size_t n,
                      double tol);

GridExtremum grid_min(const std::function<double(double)>& f, double lo, double hi, std::size_t n,
                      double tol);

}  // namespace invwave::detail
