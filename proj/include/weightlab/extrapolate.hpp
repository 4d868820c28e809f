#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weightlab/lattice.hpp"
#include "weightlab/rng.hpp"
#include "weightlab/sbound.hpp"
#include "weightlab/weights.hpp"

namespace weightlab::extrapolate {

// Damped maximal iteration Ru = sum_{k=0..K} M^k u / (2m)^k. The three
// defining properties are checked at construction, with the finite-K
// caveat on the self-improvement bound:
//   u <= Ru pointwise (exact: u is the k = 0 term, added last),
//   ||Ru||_{L^p(w)} <= 2 ||u||_{L^p(w)},
//   M(Ru) <= 2m Ru + tail,  tail = 2m * (K+1)-th term (subadditivity of M).
struct RdFResult {
    GridFunction input;
    GridFunction output;
    int terms = 0;           // K
    double m_norm_used = 0.0;
    double p = 0.0;
    double norm_ratio = 0.0;     // ||Ru|| / ||u||
    double tail_norm = 0.0;      // 2m ||M^{K+1}u/(2m)^{K+1}||_{L^p(w)}
    double tail_relative = 0.0;  // tail_norm / ||Ru||
    double max_pointwise_excess = 0.0;  // max_i (M(Ru) - 2m Ru - tail)_i, <= 0 up to rounding
};

// m defaults to twice the larger of 1 and a seeded lower estimate of the
// maximal operator norm on L^p(w); the doubling keeps the damped series
// summable even when the estimate undershoots.
RdFResult rdf_iterate(const GridFunction& u, double p, const Weight& w, int K = 16,
                      std::optional<double> m_override = std::nullopt);

struct ExtrapolationSample {
    double ap_constant = 0.0;
    double ratio = 0.0;
};

struct EnvelopeFit {
    double c = 1.0;
    double e = 1.0;
    double leading = 0.0;  // least L with ratio_i <= L * alpha_hat(c * a_i^e)
};

struct ExtrapolationTarget {
    double p = 0.0;
    std::vector<ExtrapolationSample> conclusion;  // one entry per weight
    weights::ConsistencyProfile envelope;                  // nondecreasing in the A_p constant
    EnvelopeFit fit;
    bool pass = false;  // finite ratios and fitted leading <= 4^max(1, axes)
};

struct ExtrapolationReport {
    double p0 = 0.0;
    int axes = 0;
    std::vector<ExtrapolationSample> hypothesis;  // at p0, one entry per weight
    weights::ConsistencyProfile alpha_hat;                 // hypothesis envelope
    std::vector<ExtrapolationTarget> targets;
    bool verdict = false;
    std::string note;  // records the finite sample set the verdict is relative to
};

using PairGenerator = std::function<std::pair<GridFunction, GridFunction>(Rng&)>;
using LatticePairGenerator = std::function<std::pair<LatticeFunction, LatticeFunction>(Rng&)>;

// Norm-inequality transport check: sample pairs (f, g) once (fork per
// sample index), measure hypothesis ratios ||f||/||g|| at p0 across the
// weight family, fit the nondecreasing envelope alpha_hat over the A_{p0}
// constant, then demand each target-p ratio stay below
// leading * alpha_hat(c [w]_{A_p}^e) for some fitted (c, e) with
// leading <= 4^max(1, axes). Fitted (c, e) are reported diagnostics.
ExtrapolationReport verify_extrapolation_pair(const PairGenerator& gen, double p0,
                                              const std::vector<double>& p_list,
                                              const std::vector<Weight>& weight_family,
                                              int samples, uint64_t seed);

// Mixed-norm variant on grid x space; axes = space.rank(). A rank-0 space
// runs the identical code path as the scalar verifier.
ExtrapolationReport verify_mixed_extrapolation(const LatticePairGenerator& gen, double p0,
                                               const std::vector<double>& p_list,
                                               const MixedSpace& space,
                                               const std::vector<Weight>& weight_family,
                                               int samples, uint64_t seed);

// Least weight U with  integral |T_j phi|^s u dmu <= integral |phi|^s U dmu
// for every member of the R-normalized family (so that additionally
// ||U||_{L^{(q/s)'}} <= ||u||). Pointwise explicit for tagged families;
// non-uniform atoms enter through the mass ratio of the substitution.
std::vector<double> dominating_weight_structured(const std::vector<double>& u,
                                                 const sbound::OperatorFamily& fam, double s);

struct DominationReport {
    bool pass = false;
    double norm_u = 0.0;        // L^{(q/s)'} norms
    double norm_upper = 0.0;    // of U
    double worst_violation = 0.0;
    std::vector<double> counterexample;  // phi realizing the worst violation, if any
    int trials_checked = 0;
};

// Checks both halves of the domination contract for the R-normalized
// family: the norm comparison exactly, the integral inequality on basis
// vectors plus seeded spiky draws.
DominationReport verify_domination(const std::vector<double>& U, const std::vector<double>& u,
                                   const sbound::OperatorFamily& fam, double s, int trials,
                                   uint64_t seed);

}  // namespace weightlab::extrapolate
