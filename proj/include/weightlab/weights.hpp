#pragma once

#include <utility>
#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab::weights {

struct ApReport {
    double p = 0.0;
    double constant = 0.0;
    int witness_begin = 0;  // inclusive cell index
    int witness_end = 0;    // inclusive cell index
};

// Exact sup over all cell-aligned intervals Q of
//   (avg_Q w) * (avg_Q w^{-1/(p-1)})^{p-1},
// via prefix sums (O(n^2) intervals). Ties keep the lexicographically
// earliest (begin, end) witness, which makes the scan order immaterial.
ApReport ap_constant(const Weight& w, double p);

// w^{-1/(p-1)}; involution under p -> p'.
Weight dual_weight(const Weight& w, double p);

// Cell averages of |x|^a in closed form. Errors when a cell touching the
// origin makes the integral diverge (a <= -1).
Weight power_weight(double a, const Grid1D& grid);

// Largest sigma on the grid {1 + k*1e-3} with [w]_{A_{p/sigma}} <= budget.
// The search domain is capped at p/sigma >= kExponentMin so inverse powers
// stay representable. [w]_{A_q} grows as q decreases, so the predicate is
// monotone and bisection applies. Throws when budget < [w]_{A_p} or when
// even the smallest step is infeasible.
double openness_exponent(const Weight& w, double p, double budget);

// Least nondecreasing majorant of a sample set, as a right-continuous step
// function. Duplicate abscissae merge by max. Evaluation below the first
// abscissa returns the first envelope value.
struct ConsistencyProfile {
    std::vector<double> x;  // strictly increasing
    std::vector<double> y;  // nondecreasing
    double eval(double at) const;
};

ConsistencyProfile fit_consistency_profile(std::vector<std::pair<double, double>> samples);

}  // namespace weightlab::weights
