#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "weightlab/lattice.hpp"

namespace weightlab::sbound {

struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> a;  // row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {
        if (r < 0 || c < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
    }
    double& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<double>& d);
    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(std::span<const double> x) const;
};

enum class StructureTag { generic, multiplication, weighted_composition };

// Finite family of operators acting on a flattened MixedSpace.
// multiplication members are diagonal; weighted_composition members have
// exactly one nonzero per row, with the nonzero columns a permutation, so
// T phi(i) = m(i) phi(sigma(i)) with sigma invertible.
struct OperatorFamily {
    MixedSpace space;
    std::vector<Matrix> members;
    std::vector<std::string> labels;
    StructureTag tag = StructureTag::generic;
};

OperatorFamily make_family(MixedSpace space, std::vector<Matrix> members, StructureTag tag,
                           std::vector<std::string> labels = {});

struct WeightedComposition {
    std::vector<double> m;
    std::vector<int> sigma;          // T phi(i) = m[i] phi(sigma[i])
    std::vector<int> sigma_inverse;
};
WeightedComposition extract_weighted_composition(const Matrix& member);
std::vector<double> extract_diagonal(const Matrix& member);

// || (sum_n |T_{a_n} x_n|^s)^{1/s} || / || (sum_n |x_n|^s)^{1/s} ||.
double ls_ratio(const OperatorFamily& fam, std::span<const int> assignment,
                const std::vector<std::vector<double>>& xs, double s);

struct SearchOptions {
    int n_max = 6;       // largest tuple size
    int restarts = 32;
    int iters = 200;     // ascent iterations per restart
    double step = 0.1;   // initial ascent step (halved on failure)
    uint64_t seed = 0;
};

enum class CertificateKind { interpolation, duality, closed_form, uniform_norm };
const char* certificate_kind_name(CertificateKind k);

struct UpperCertificate {
    double value = 0.0;
    CertificateKind kind = CertificateKind::uniform_norm;
};

struct LsWitness {
    std::vector<int> assignment;
    std::vector<std::vector<double>> tuple;
};

struct LsBoundEstimate {
    double s = 0.0;
    double lower = 0.0;
    LsWitness witness;
    std::optional<UpperCertificate> upper;
};

// Externally certified values at other exponents, usable as certificates.
struct CertificateHints {
    std::optional<std::pair<double, double>> known_low;   // (s0, bound), s0 <= s
    std::optional<std::pair<double, double>> known_high;  // (s1, bound), s1 >= s
    std::optional<double> adjoint_value;                  // certified bound at s' on the adjoint
};

// Seeded multi-start maximization of ls_ratio over tuple size, member
// assignment and tuple entries: finite-difference gradient ascent with
// step halving on small problems, randomized direction probes on large
// ones, plus member-swap sweeps (ties to the lowest member id). The
// result carries the best witness and the cheapest valid upper
// certificate. Deterministic per (family, s, options), independent of the
// thread count.
LsBoundEstimate estimate_ls_bound(const OperatorFamily& fam, double s, const SearchOptions& opts,
                                  const CertificateHints& hints = {});

// Exact value for tagged families.
//   multiplication: max_j ||diag_j||_inf for every s in [1, inf].
//   weighted_composition on a flat-exponent space, s < q: the least
//     dominating weight is pointwise explicit, and maximizing its L^r norm
//     (r = (q/s)') over test weights reduces to a finite maximum over
//     source cells; s = q: sup_j ||T_j||; s > q: conjugate exponents on
//     the adjoint family.
double exact_ls_bound_structured(const OperatorFamily& fam, double s);

// Measure-weighted transposes on the conjugate-exponent space:
// <T f, g> = <f, T* g> for the mass pairing.
OperatorFamily adjoint_family(const OperatorFamily& fam);

// Geometric interpolation r0^{1-theta} r1^theta along 1/s = (1-theta)/s0 +
// theta/s1 (convexity in 1/s); s1 = inf admitted. Never exceeds
// max(r0, r1).
double interpolation_certificate(double r_s0, double r_s1, double s0, double s1, double s);

// Upper bound on the member norm on the flat weighted L^q space: exact for
// diagonal and one-nonzero-per-row members, L^1/L^inf interpolation bound
// otherwise.
double member_norm_upper(const Matrix& member, const MixedSpace& space, double q);

// Seeded lower estimate of the Rademacher bound: least C with
//   || sum_n eps_n T_n x_n ||_{L^2(signs; Y)} <= C || sum_n eps_n x_n ||.
// Sign patterns are enumerated exactly for tuples up to 12, Monte Carlo
// sampled above.
double rademacher_bound_estimate(const OperatorFamily& fam, const SearchOptions& opts);

}  // namespace weightlab::sbound
