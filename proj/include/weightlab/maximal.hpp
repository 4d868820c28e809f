#pragma once

#include <cstdint>
#include <span>

#include "weightlab/lattice.hpp"

namespace weightlab::maximal {

// Uncentered maximal function: Mf(i) = max over cell intervals [a,b]
// containing i of the average of |f| over [a,b]. Intervals never wrap;
// the window edge truncates the admissible family. Exact, O(n^2): for
// each start a one forward pass of running sums and one backward pass of
// suffix maxima. The running sums accumulate in ascending cell order, so
// the values agree bit for bit with a direct triple loop.
GridFunction maximal_function(const GridFunction& f);

// Maximizing interval for one cell, ties broken shortest then leftmost.
struct IntervalWitness {
    int begin = 0, end = 0;  // inclusive
    double average = 0.0;
};
IntervalWitness maximal_witness(const GridFunction& f, int cell);

// Fiberwise application along the grid axis.
LatticeFunction lattice_maximal(const LatticeFunction& f);

// Seeded lower estimate of ||M||_{B(L^p(w))}: random nonnegative starts
// plus coordinate hill climbing; trial 0 is the constant function, so the
// bound is always >= 1. Deterministic per (p, w, trials, seed).
struct MaximalNormEstimate {
    double p = 0.0;
    Weight weight;
    double lower_bound = 0.0;
    GridFunction witness;
    int trials = 0;
    uint64_t seed = 0;
};
MaximalNormEstimate maximal_norm_lower(double p, const Weight& w, int trials, uint64_t seed);

}  // namespace weightlab::maximal
