#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "invwave/model.hpp"

namespace invwave {

// Numerical audit of the structural assumptions on F and G. Sampling-based:
// violations are data (witness points), not errors.
struct AssumptionWitness {
    char item = '?';  // 'a', 'b' or 'c'
    double u = 0.0;
    double v = 0.0;
    double value = 0.0;
    std::string what;
};

struct AssumptionReport {
    bool holds_a = false;
    bool holds_b = false;
    bool holds_c = false;
    std::vector<AssumptionWitness> witnesses;
    std::size_t grid_resolution = 0;

    bool all() const { return holds_a && holds_b && holds_c; }
};

// Samples:
//  (a) G(0,v)(v - mu) < 0 on v in [0, 2 v0] minus a 1e-6 neighborhood of mu;
//  (b) G(1,0) >= G(u,v) >= G(0,v) on [0,1] x [0,v0], and G(u,v0) < 0;
//  (c) F(1,0) = 0, F(u,0) > 0 on [0,1), F(1,v) < 0 on (0,v0].
// n_samples (>= 101) is the per-axis resolution.
AssumptionReport verify_assumptions(const KineticModel& model, double mu, double v0,
                                    std::size_t n_samples = 201);

}  // namespace invwave
