#pragma once

#include <cstdint>
#include <vector>

#include "weightlab/lattice.hpp"

namespace weightlab::dualspace {

// Pairing integral sum_I mu_I f_I g_I over the product masses.
double pairing(std::span<const double> f, std::span<const double> g, const MixedSpace& space);

// Extremal element of the iterated-norm duality: given g (measured in the
// conjugate-exponent norm on `space`), builds f with
//   pairing(f, g) = ||f||_space * ||g||_dual  (Hoelder equality),
// via f = sign(g) |g|^{q_n' - 1} prod_{i=2..n} R_i^{q_{i-1}' - q_i'},
// where R_i is the conjugate tail norm of g over axes i..n. Fibers where a
// tail norm vanishes are zeroed (the 0 * inf convention).
struct NormingWitness {
    std::vector<double> f;
    std::vector<double> g;
    double pairing_value = 0.0;
    double f_norm = 0.0;       // ||f||_space
    double g_dual_norm = 0.0;  // ||g||_dual
};
NormingWitness norming_function(std::span<const double> g, const MixedSpace& space);

// Hoelder bound on random f plus the norming witness.
struct DualityReport {
    double sampled_max = 0.0;   // max over trials of |pairing| / ||f||
    double witness_value = 0.0; // ||g||_dual, attained by the witness
    double gap = 0.0;           // witness_value - sampled_max
    bool holder_ok = true;      // no sample exceeded ||g||_dual
};
DualityReport verify_duality_pairing(std::span<const double> g, const MixedSpace& space,
                                     int trials, uint64_t seed);

// Norm comparisons between tuple norms at exponents 1, r, infinity:
//   ||f||_{X(l^r)} <= ||f||_{X(l^1)} <= N^{1-1/r} ||f||_{X(l^r)}
//   ||f||_{X(l^inf)} <= ||f||_{X(l^r)} <= N^{1/r} ||f||_{X(l^inf)}
// checked on random tuples; the upper factors are attained exactly by
// identical-entry tuples, while disjointly supported tuples collapse all
// three norms (reported, not asserted as a gap witness).
struct TupleDualityReport {
    bool chain_ok = true;
    double worst_slack = 0.0;            // most negative chain margin observed
    double identical_ratio_1_r = 0.0;    // ||.||_1 / ||.||_r for identical entries
    double identical_expected_1_r = 0.0; // N^{1-1/r}
    double identical_ratio_r_inf = 0.0;  // ||.||_r / ||.||_inf for identical entries
    double identical_expected_r_inf = 0.0;  // N^{1/r}
    double disjoint_ratio_r_inf = 0.0;   // collapses to 1 for disjoint supports
};
TupleDualityReport tuple_duality_constants(const MixedSpace& space, int tuple_size, double r,
                                           int trials, uint64_t seed);

}  // namespace weightlab::dualspace
