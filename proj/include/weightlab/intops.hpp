#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "weightlab/kernels.hpp"
#include "weightlab/lattice.hpp"
#include "weightlab/sbound.hpp"
#include "weightlab/weights.hpp"

namespace weightlab::intops {

// Two-parameter family of operators on the state space X, indexed by time
// cells. Causal families vanish for t < s.
struct EvolutionFamily {
    std::function<sbound::Matrix(int t, int s)> evaluator;
    bool causal = true;
    std::string label;
    double uniform_bound = 1.0;  // sup over (t, s) of ||T(t,s)||_{L(X)}
    double boundary_loss = 0.0;  // zero-padded variants: 1 - min row mass
    int time_cells = 0;
    MixedSpace state_space;
};

// T(t,s) = Id for every pair (not causal, so convolution comparisons see
// the full window).
EvolutionFamily identity_family(MixedSpace state_space, int time_cells);

// T(t,s) = diag(m) for every pair; uniform bound max|m|.
EvolutionFamily multiplication_evolution_family(MixedSpace state_space, int time_cells,
                                                std::vector<double> m, std::string label);

// Causal diffusion semigroup T(t,s) = exp((t-s) scale L) on the spatial
// grid, L the second-difference generator. Periodic (default): exact
// circulant spectral form — nonnegative entries, unit row sums, exact
// two-parameter consistency. Zero-padded: truncated sampled Gaussian rows
// normalized by the full-window mass, so rows near the edge lose mass
// (recorded in boundary_loss). T(t,t) = Id exactly in both variants.
EvolutionFamily heat_evolution_family(const Grid1D& space_grid, double q, double scale,
                                      int time_cells, bool periodic = true);

struct IntegralOperator {
    kernels::Kernel kernel;
    EvolutionFamily family;
    Grid1D time_grid;
};

IntegralOperator make_integral_operator(kernels::Kernel k, EvolutionFamily family,
                                        const Grid1D& time_grid);

// (If)(t) = h sum_s k(t-s) T(t,s) f(s).
LatticeFunction apply_integral_operator(const IntegralOperator& op, const LatticeFunction& f);

// Same operator as one matrix on the flattened lattice (time major).
sbound::Matrix assemble_matrix(const IntegralOperator& op);

// L^p(v; X) as a mixed space: time axis with masses h v_i in front of the
// state axes.
MixedSpace lattice_space(const Grid1D& time_grid, const Weight& v, double p,
                         const MixedSpace& state_space);

// Pointwise proof chain on seeded samples:
//   ||If(t)||_X <= (|k| * ||f(.)||_X)(t) <= M(||f(.)||_X)(t),
// then the norm comparison in L^p(v). Families with uniform bound > 1 are
// rescaled when allowed, rejected otherwise.
struct UniformBoundReport {
    bool pass = false;
    double worst_pointwise_a = 0.0;  // ||If(t)||_X - (|k| * ||f||_X)(t)
    double worst_pointwise_b = 0.0;  // (|k| * ||f||_X)(t) - M(||f||_X)(t)
    double worst_norm_slack = 0.0;   // ||If|| - ||M(||f||_X)||
    int trials = 0;
};
UniformBoundReport uniform_bound_check(const IntegralOperator& op, double p, const Weight& v,
                                       int trials, uint64_t seed, bool rescale = true);

// Zero-extension / restriction transport: (E T R) on the full state space.
sbound::Matrix extend_restrict(const sbound::Matrix& T, std::span<const int> subcells,
                               int full_dim);
EvolutionFamily extend_restrict(const EvolutionFamily& fam, std::vector<int> subcells,
                                MixedSpace full_space);

// Experiment driver: builds integral-operator families over certified
// catalog kernels and an evolution family, estimates tuple bounds across
// exponents and power weights, and (for multiplication-structured
// evolution members) checks the search lower bounds against the exact
// member-family bound times a fitted maximal-norm envelope.
struct ExperimentConfig {
    std::vector<std::string> kernel_names{"gaussian", "box", "one_sided_exponential"};
    kernels::CatalogParams kernel_params{0.02, 8.0, 2, std::nullopt};
    Grid1D time_grid{0.0, 1.0 / 64.0, 64};
    int space_cells = 16;
    double space_h = 1.0 / 16.0;
    std::string family = "heat";  // heat | identity | multiplication
    double diffusion_scale = 2e-4;
    int multiplication_members = 3;
    std::string member_mode = "kernels";  // kernels: {I_k}; evolution: {I_{k0,T_j}}
    double p = 2.0;
    double q = 2.0;
    std::vector<double> s_list{2.0};
    std::vector<double> weight_powers{0.0, 0.3, 0.6};
    sbound::SearchOptions search{4, 8, 80, 0.1, 0};
    int rademacher_tuple = 0;  // n_max for the Rademacher estimate; 0 skips
    int chain_trials = 8;      // samples for the pointwise chain; 0 skips
    uint64_t seed = 1;
};

struct ExperimentRow {
    double s = 0.0;
    double weight_power = 0.0;
    double ap_constant = 0.0;  // [v]_{A_{p/s}} (exponent clamped to the valid range)
    double lower = 0.0;
    double upper = 0.0;  // 0 when no certificate applies
    std::string certificate;
    double structured_certificate = 0.0;  // R^s(T) * fitted envelope; 0 when untagged
};

struct RademacherRow {
    double weight_power = 0.0;
    double ap_constant = 0.0;  // [v]_{A_p}
    double value = 0.0;
};

struct ExperimentReport {
    std::vector<std::string> member_labels;
    std::vector<std::string> kernel_verdicts;  // "name:status" per requested kernel
    std::vector<ExperimentRow> rows;
    std::vector<RademacherRow> rademacher;
    weights::ConsistencyProfile envelope;  // lower (or Rademacher) bound vs A_p constant
    bool sandwich_ok = true;  // every lower <= structured certificate (structured mode)
    bool chain_ok = true;     // uniform_bound_check passed for every member kernel
    std::string notes;
};

ExperimentReport theorem_experiment(const ExperimentConfig& cfg);

}  // namespace weightlab::intops
