#include "weightlab/sbound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weightlab/parallel.hpp"
#include "weightlab/rng.hpp"

namespace weightlab::sbound {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows; ++i) m.at(i, i) = d[static_cast<size_t>(i)];
    return m;
}

void Matrix::apply(std::span<const double> x, std::span<double> y) const {
    if (static_cast<int>(x.size()) != cols || static_cast<int>(y.size()) != rows)
        throw std::invalid_argument("matrix apply: size mismatch");
    for (int r = 0; r < rows; ++r) {
        double acc = 0.0;
        const double* row = a.data() + static_cast<size_t>(r) * cols;
        for (int c = 0; c < cols; ++c) acc += row[c] * x[static_cast<size_t>(c)];
        y[static_cast<size_t>(r)] = acc;
    }
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
    std::vector<double> y(static_cast<size_t>(rows));
    apply(x, y);
    return y;
}

std::vector<double> extract_diagonal(const Matrix& member) {
    if (member.rows != member.cols) throw std::invalid_argument("diagonal member must be square");
    std::vector<double> d(static_cast<size_t>(member.rows));
    for (int r = 0; r < member.rows; ++r)
        for (int c = 0; c < member.cols; ++c) {
            if (r == c)
                d[static_cast<size_t>(r)] = member.at(r, c);
            else if (member.at(r, c) != 0.0)
                throw std::invalid_argument("multiplication member has an off-diagonal entry");
        }
    return d;
}

WeightedComposition extract_weighted_composition(const Matrix& member) {
    if (member.rows != member.cols)
        throw std::invalid_argument("weighted composition member must be square");
    const int n = member.rows;
    WeightedComposition wc;
    wc.m.assign(static_cast<size_t>(n), 0.0);
    wc.sigma.assign(static_cast<size_t>(n), -1);
    wc.sigma_inverse.assign(static_cast<size_t>(n), -1);
    for (int r = 0; r < n; ++r) {
        int hit = -1;
        for (int c = 0; c < n; ++c)
            if (member.at(r, c) != 0.0) {
                if (hit >= 0)
                    throw std::invalid_argument(
                        "weighted composition member has two nonzeros in a row");
                hit = c;
            }
        if (hit < 0)
            throw std::invalid_argument("weighted composition member has an all-zero row");
        wc.m[static_cast<size_t>(r)] = member.at(r, hit);
        wc.sigma[static_cast<size_t>(r)] = hit;
        if (wc.sigma_inverse[static_cast<size_t>(hit)] >= 0)
            throw std::invalid_argument("weighted composition columns must form a permutation");
        wc.sigma_inverse[static_cast<size_t>(hit)] = r;
    }
    return wc;
}

OperatorFamily make_family(MixedSpace space, std::vector<Matrix> members, StructureTag tag,
                           std::vector<std::string> labels) {
    if (members.empty()) throw std::invalid_argument("family needs at least one member");
    const int dim = space.dim();
    for (const Matrix& m : members) {
        if (m.rows != dim || m.cols != dim)
            throw std::invalid_argument("member shape must match the space dimension");
        if (tag == StructureTag::multiplication) extract_diagonal(m);
        if (tag == StructureTag::weighted_composition) extract_weighted_composition(m);
    }
    if (labels.empty()) {
        labels.reserve(members.size());
        for (size_t j = 0; j < members.size(); ++j) labels.push_back("T" + std::to_string(j));
    } else if (labels.size() != members.size()) {
        throw std::invalid_argument("one label per member");
    }
    return OperatorFamily{std::move(space), std::move(members), std::move(labels), tag};
}

namespace {

std::vector<std::vector<double>> apply_assignment(const OperatorFamily& fam,
                                                  std::span<const int> assignment,
                                                  const std::vector<std::vector<double>>& xs) {
    std::vector<std::vector<double>> txs(xs.size());
    for (size_t n = 0; n < xs.size(); ++n)
        txs[n] = fam.members[static_cast<size_t>(assignment[n])].apply(xs[n]);
    return txs;
}

void validate_tuple(const OperatorFamily& fam, std::span<const int> assignment,
                    const std::vector<std::vector<double>>& xs) {
    if (xs.empty() || assignment.size() != xs.size())
        throw std::invalid_argument("assignment and tuple must have equal positive length");
    for (int a : assignment)
        if (a < 0 || a >= static_cast<int>(fam.members.size()))
            throw std::invalid_argument("assignment index out of range");
    for (const auto& x : xs)
        if (static_cast<int>(x.size()) != fam.space.dim())
            throw std::invalid_argument("tuple entry has wrong dimension");
}

}  // namespace

double ls_ratio(const OperatorFamily& fam, std::span<const int> assignment,
                const std::vector<std::vector<double>>& xs, double s) {
    check_s_exponent(s);
    validate_tuple(fam, assignment, xs);
    const double den = tuple_norm_flat(xs, s, fam.space);
    if (den == 0.0) throw std::invalid_argument("ls_ratio: zero denominator tuple");
    const double num = tuple_norm_flat(apply_assignment(fam, assignment, xs), s, fam.space);
    return num / den;
}

// ---------------------------------------------------------------------------
// Search core, shared by the l^s and Rademacher estimators.
// ---------------------------------------------------------------------------

namespace {

// Ratio objective over (assignment, tuple); returns -1 on a degenerate
// denominator so the search rejects the state.
using Objective = std::function<double(const std::vector<std::vector<double>>& xs,
                                       const std::vector<std::vector<double>>& txs)>;

struct SearchState {
    std::vector<int> assign;
    std::vector<std::vector<double>> xs;
    std::vector<std::vector<double>> txs;
    double value = -1.0;
};

struct SearchResult {
    double value = -1.0;
    LsWitness witness;
};

class RatioSearch {
  public:
    RatioSearch(const OperatorFamily& fam, Objective objective, const SearchOptions& opts)
        : fam_(fam), objective_(std::move(objective)), opts_(opts) {
        if (opts.n_max < 1 || opts.restarts < 1 || opts.iters < 1 || !(opts.step > 0.0))
            throw std::invalid_argument("search options must be positive");
    }

    SearchResult run() const {
        const int R = opts_.restarts;
        std::vector<SearchResult> results(static_cast<size_t>(R));
        Rng root(opts_.seed);
        std::vector<Rng> forks;
        forks.reserve(static_cast<size_t>(R));
        for (int r = 0; r < R; ++r) forks.push_back(root.fork(static_cast<uint64_t>(r)));
        parallel_for(R, [&](int r) { results[static_cast<size_t>(r)] = run_restart(r, forks[static_cast<size_t>(r)]); });
        SearchResult best;  // merge in restart order: ties keep the earliest
        for (const SearchResult& res : results)
            if (res.value > best.value) best = res;
        return best;
    }

  private:
    double eval(const SearchState& st) const { return objective_(st.xs, st.txs); }

    void refresh_tx(SearchState& st, size_t n) const {
        st.txs[n] = fam_.members[static_cast<size_t>(st.assign[n])].apply(st.xs[n]);
    }

    // Objective after replacing slot n's vector; st is restored on return.
    double probe_vector(SearchState& st, size_t n, const std::vector<double>& cand) const {
        std::vector<double> keep_x = std::move(st.xs[n]);
        std::vector<double> keep_tx = std::move(st.txs[n]);
        st.xs[n] = cand;
        st.txs[n] = fam_.members[static_cast<size_t>(st.assign[n])].apply(cand);
        const double v = eval(st);
        st.xs[n] = std::move(keep_x);
        st.txs[n] = std::move(keep_tx);
        return v;
    }

    void assignment_sweep(SearchState& st) const {
        const int J = static_cast<int>(fam_.members.size());
        for (size_t n = 0; n < st.xs.size(); ++n) {
            int best_j = st.assign[n];
            double best_v = st.value;
            std::vector<double> keep = std::move(st.txs[n]);
            for (int j = 0; j < J; ++j) {
                if (j == st.assign[n]) continue;
                st.txs[n] = fam_.members[static_cast<size_t>(j)].apply(st.xs[n]);
                const double v = eval(st);
                if (v > best_v) {  // strict: ties keep the lowest member id
                    best_v = v;
                    best_j = j;
                }
            }
            if (best_j != st.assign[n]) {
                st.assign[n] = best_j;
                st.txs[n] = fam_.members[static_cast<size_t>(best_j)].apply(st.xs[n]);
                st.value = best_v;
            } else {
                st.txs[n] = std::move(keep);
            }
        }
    }

    void rescale(SearchState& st) const {
        double peak = 0.0;
        for (const auto& x : st.xs)
            for (double v : x) peak = std::max(peak, std::fabs(v));
        if (peak <= 0.0 || (peak > 1e-6 && peak < 1e6)) return;
        for (auto& x : st.xs)
            for (double& v : x) v /= peak;
        for (size_t n = 0; n < st.xs.size(); ++n) refresh_tx(st, n);
    }

    SearchState init_state(int restart, Rng& rng) const {
        const int D = fam_.space.dim();
        const int J = static_cast<int>(fam_.members.size());
        SearchState st;
        // First D restarts: one slot per member, spikes matched to the
        // columns each member reads from at a chosen source cell. The
        // rest: random tuples.
        if (restart < D) {
            const int N = std::min(J, opts_.n_max);
            st.assign.resize(static_cast<size_t>(N));
            st.xs.assign(static_cast<size_t>(N), std::vector<double>(static_cast<size_t>(D), 0.0));
            for (int n = 0; n < N; ++n) {
                st.assign[static_cast<size_t>(n)] = n;
                const Matrix& A = fam_.members[static_cast<size_t>(n)];
                int col = 0;
                double best = -1.0;
                for (int c = 0; c < D; ++c) {
                    const double mag = std::fabs(A.at(restart, c));
                    if (mag > best) {
                        best = mag;
                        col = c;
                    }
                }
                if (best <= 0.0) col = rng.uniform_int(D);
                st.xs[static_cast<size_t>(n)][static_cast<size_t>(col)] = 1.0;
            }
        } else {
            const int N = 1 + rng.uniform_int(opts_.n_max);
            st.assign.resize(static_cast<size_t>(N));
            st.xs.assign(static_cast<size_t>(N), std::vector<double>(static_cast<size_t>(D), 0.0));
            const bool dense = (restart % 2) == 0;
            for (int n = 0; n < N; ++n) {
                st.assign[static_cast<size_t>(n)] = rng.uniform_int(J);
                auto& x = st.xs[static_cast<size_t>(n)];
                if (dense) {
                    for (double& v : x) v = rng.normal();
                } else {
                    x[static_cast<size_t>(rng.uniform_int(D))] = 1.0 + rng.uniform();
                }
            }
        }
        st.txs = apply_assignment(fam_, st.assign, st.xs);
        st.value = eval(st);
        return st;
    }

    void gradient_iteration(SearchState& st, double& step) const {
        const int D = fam_.space.dim();
        const size_t N = st.xs.size();
        std::vector<std::vector<double>> grad(N, std::vector<double>(static_cast<size_t>(D), 0.0));
        double gnorm = 0.0;
        for (size_t n = 0; n < N; ++n)
            for (int i = 0; i < D; ++i) {
                const double eps = 1e-6 * (1.0 + std::fabs(st.xs[n][static_cast<size_t>(i)]));
                std::vector<double> cand = st.xs[n];
                cand[static_cast<size_t>(i)] += eps;
                const double v = probe_vector(st, n, cand);
                const double g = (v - st.value) / eps;
                grad[n][static_cast<size_t>(i)] = g;
                gnorm += g * g;
            }
        gnorm = std::sqrt(gnorm);
        if (!(gnorm > 1e-14)) {
            step *= 0.5;
            return;
        }
        double scale = 0.0;
        for (const auto& x : st.xs)
            for (double v : x) scale += v * v;
        scale = std::max(1.0, std::sqrt(scale));
        SearchState best = st;
        bool improved = false;
        for (double alpha : {step, step * 0.5, step * 0.25, step * 0.125}) {
            SearchState cand = st;
            for (size_t n = 0; n < N; ++n)
                for (int i = 0; i < D; ++i)
                    cand.xs[n][static_cast<size_t>(i)] +=
                        alpha * scale * grad[n][static_cast<size_t>(i)] / gnorm;
            for (size_t n = 0; n < N; ++n) refresh_tx(cand, n);
            cand.value = eval(cand);
            if (cand.value > best.value) {
                best = std::move(cand);
                improved = true;
            }
        }
        if (improved)
            st = std::move(best);
        else
            step *= 0.5;
    }

    void probe_iteration(SearchState& st, double& step, Rng& rng) const {
        const int D = fam_.space.dim();
        const size_t n = static_cast<size_t>(rng.uniform_int(static_cast<int>(st.xs.size())));
        double xnorm = 0.0;
        for (double v : st.xs[n]) xnorm += v * v;
        xnorm = std::max(1.0, std::sqrt(xnorm));
        bool any = false;
        for (int probe = 0; probe < 6; ++probe) {
            std::vector<double> cand = st.xs[n];
            if (probe % 2 == 0) {
                const int i = rng.uniform_int(D);
                cand[static_cast<size_t>(i)] += step * xnorm * rng.normal();
            } else {
                for (double& v : cand) v += step * xnorm * rng.normal() / std::sqrt(double(D));
            }
            const double v = probe_vector(st, n, cand);
            if (v > st.value) {
                st.xs[n] = std::move(cand);
                refresh_tx(st, n);
                st.value = v;
                any = true;
            }
        }
        step *= any ? 1.1 : 0.8;
    }

    SearchResult run_restart(int restart, Rng rng) const {
        SearchState st = init_state(restart, rng);
        const bool small = st.xs.size() * static_cast<size_t>(fam_.space.dim()) <= 256;
        double step = opts_.step;
        assignment_sweep(st);
        for (int it = 0; it < opts_.iters; ++it) {
            if (small)
                gradient_iteration(st, step);
            else
                probe_iteration(st, step, rng);
            if (it % 20 == 19) assignment_sweep(st);
            if (it % 10 == 9) rescale(st);
            if (step < 1e-9) break;
        }
        assignment_sweep(st);
        SearchResult res;
        res.value = st.value;
        res.witness.assignment = std::move(st.assign);
        res.witness.tuple = std::move(st.xs);
        return res;
    }

    const OperatorFamily& fam_;
    Objective objective_;
    SearchOptions opts_;
};

bool family_is_zero(const OperatorFamily& fam) {
    for (const Matrix& m : fam.members)
        for (double v : m.a)
            if (v != 0.0) return false;
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Exact bounds for tagged families.
// ---------------------------------------------------------------------------

namespace {

double exact_weighted_composition_member_norm(const WeightedComposition& wc,
                                              const std::vector<double>& mu, double q) {
    // ||T||^q = max_k (mu_k / mu_{sigma(k)}) |m(k)|^q: spike at sigma(k).
    double best = 0.0;
    for (size_t k = 0; k < wc.m.size(); ++k) {
        const size_t l = static_cast<size_t>(wc.sigma[k]);
        best = std::max(best, mu[k] / mu[l] * std::pow(std::fabs(wc.m[k]), q));
    }
    return std::pow(best, 1.0 / q);
}

}  // namespace

double exact_ls_bound_structured(const OperatorFamily& fam, double s) {
    check_s_exponent(s);
    if (fam.tag == StructureTag::multiplication) {
        double best = 0.0;
        for (const Matrix& m : fam.members)
            for (double d : extract_diagonal(m)) best = std::max(best, std::fabs(d));
        return best;
    }
    if (fam.tag != StructureTag::weighted_composition)
        throw std::invalid_argument("exact bound needs a structure tag");

    double q = 0.0;
    if (fam.space.rank() == 0 || !fam.space.flat_exponent(&q))
        throw std::invalid_argument(
            "weighted composition bound needs a flat-exponent space of positive rank");
    const std::vector<double> mu = fam.space.flat_masses();
    std::vector<WeightedComposition> wcs;
    wcs.reserve(fam.members.size());
    for (const Matrix& m : fam.members) wcs.push_back(extract_weighted_composition(m));

    if (s > q + 1e-12) {
        // Conjugate exponents: the bound for the adjoints at s' < q'.
        return exact_ls_bound_structured(adjoint_family(fam), conjugate_exponent(s));
    }
    if (std::fabs(s - q) <= 1e-12) {
        double best = 0.0;
        for (const WeightedComposition& wc : wcs)
            best = std::max(best, exact_weighted_composition_member_norm(wc, mu, q));
        return best;
    }

    // s < q. The least weight dominating all |T_j phi|^s against |phi|^s is
    // U(l) = max_j (mu_{s_j}/mu_l) |m_j(s_j)|^s u(s_j), s_j = sigma_j^{-1}(l);
    // its L^r(mu) norm over test weights u >= 0 of unit L^r norm
    // (r = (q/s)') is maximized by a spike at one source cell, giving a
    // finite maximum of per-cell aggregates.
    const double r = conjugate_exponent(q / s);
    const size_t D = mu.size();
    double best = 0.0;
    std::vector<double> image_best(D);
    for (size_t k = 0; k < D; ++k) {
        std::fill(image_best.begin(), image_best.end(), 0.0);
        for (const WeightedComposition& wc : wcs) {
            const size_t l = static_cast<size_t>(wc.sigma[k]);
            image_best[l] = std::max(image_best[l], std::fabs(wc.m[k]));
        }
        double acc = 0.0;
        for (size_t l = 0; l < D; ++l)
            if (image_best[l] > 0.0)
                acc += std::pow(mu[l], 1.0 - r) * std::pow(image_best[l], s * r);
        best = std::max(best, std::pow(mu[k], r - 1.0) * acc);
    }
    return std::pow(best, 1.0 / (s * r));
}

OperatorFamily adjoint_family(const OperatorFamily& fam) {
    const std::vector<double> mu = fam.space.flat_masses();
    const int D = fam.space.dim();
    std::vector<Matrix> adj;
    adj.reserve(fam.members.size());
    for (const Matrix& m : fam.members) {
        Matrix a(D, D);
        for (int r = 0; r < D; ++r)
            for (int c = 0; c < D; ++c)
                a.at(r, c) = m.at(c, r) * mu[static_cast<size_t>(c)] / mu[static_cast<size_t>(r)];
        adj.push_back(std::move(a));
    }
    std::vector<std::string> labels;
    labels.reserve(fam.labels.size());
    for (const std::string& l : fam.labels) labels.push_back(l + "*");
    return make_family(fam.space.dual(), std::move(adj), fam.tag, std::move(labels));
}

double interpolation_certificate(double r_s0, double r_s1, double s0, double s1, double s) {
    if (!(r_s0 >= 0.0) || !(r_s1 >= 0.0))
        throw std::invalid_argument("interpolation endpoints must be nonnegative");
    check_s_exponent(s0);
    check_s_exponent(s1);
    check_s_exponent(s);
    const double i0 = (s0 == kInf) ? 0.0 : 1.0 / s0;
    const double i1 = (s1 == kInf) ? 0.0 : 1.0 / s1;
    const double is = (s == kInf) ? 0.0 : 1.0 / s;
    if (!(i0 > i1)) throw std::invalid_argument("interpolation needs s0 < s1");
    if (is > i0 + 1e-15 || is < i1 - 1e-15)
        throw std::invalid_argument("interpolation target outside [s0, s1]");
    const double theta = std::clamp((i0 - is) / (i0 - i1), 0.0, 1.0);
    return std::pow(r_s0, 1.0 - theta) * std::pow(r_s1, theta);
}

double member_norm_upper(const Matrix& member, const MixedSpace& space, double q) {
    check_exponent(q);
    if (member.rows != space.dim() || member.cols != space.dim())
        throw std::invalid_argument("member shape must match the space dimension");
    const std::vector<double> mu = space.flat_masses();
    bool diagonal = true, one_per_row = true;
    for (int r = 0; r < member.rows && (diagonal || one_per_row); ++r) {
        int nonzeros = 0;
        for (int c = 0; c < member.cols; ++c)
            if (member.at(r, c) != 0.0) {
                ++nonzeros;
                if (r != c) diagonal = false;
            }
        if (nonzeros != 1) one_per_row = false;
    }
    if (diagonal) {
        double best = 0.0;
        for (int i = 0; i < member.rows; ++i) best = std::max(best, std::fabs(member.at(i, i)));
        return best;
    }
    if (one_per_row) {
        double best = 0.0;
        for (int r = 0; r < member.rows; ++r)
            for (int c = 0; c < member.cols; ++c)
                if (member.at(r, c) != 0.0)
                    best = std::max(best, mu[static_cast<size_t>(r)] / mu[static_cast<size_t>(c)] *
                                              std::pow(std::fabs(member.at(r, c)), q));
        return std::pow(best, 1.0 / q);
    }
    // Interpolation between the weighted column-sum bound on L^1 and the
    // row-sum bound on L^inf.
    double c1 = 0.0, cinf = 0.0;
    for (int c = 0; c < member.cols; ++c) {
        double col = 0.0;
        for (int r = 0; r < member.rows; ++r)
            col += mu[static_cast<size_t>(r)] * std::fabs(member.at(r, c));
        c1 = std::max(c1, col / mu[static_cast<size_t>(c)]);
    }
    for (int r = 0; r < member.rows; ++r) {
        double row = 0.0;
        for (int c = 0; c < member.cols; ++c) row += std::fabs(member.at(r, c));
        cinf = std::max(cinf, row);
    }
    if (c1 == 0.0 || cinf == 0.0) return 0.0;
    return std::pow(c1, 1.0 / q) * std::pow(cinf, 1.0 - 1.0 / q);
}

const char* certificate_kind_name(CertificateKind k) {
    switch (k) {
        case CertificateKind::interpolation: return "interpolation";
        case CertificateKind::duality: return "duality";
        case CertificateKind::closed_form: return "closed_form";
        case CertificateKind::uniform_norm: return "uniform_norm";
    }
    return "?";
}

LsBoundEstimate estimate_ls_bound(const OperatorFamily& fam, double s, const SearchOptions& opts,
                                  const CertificateHints& hints) {
    check_s_exponent(s);
    LsBoundEstimate est;
    est.s = s;

    Objective obj = [&fam, s](const std::vector<std::vector<double>>& xs,
                              const std::vector<std::vector<double>>& txs) {
        const double den = tuple_norm_flat(xs, s, fam.space);
        if (!(den > 1e-300)) return -1.0;
        return tuple_norm_flat(txs, s, fam.space) / den;
    };
    SearchResult found = RatioSearch(fam, obj, opts).run();
    if (found.value < 0.0) {
        if (!family_is_zero(fam)) throw std::runtime_error("ls bound search found no valid tuple");
        found.value = 0.0;
    }
    est.lower = found.value;
    est.witness = std::move(found.witness);

    // Cheapest valid upper certificate.
    std::optional<UpperCertificate> upper;
    auto consider = [&upper](double value, CertificateKind kind) {
        if (!std::isfinite(value)) return;
        if (!upper || value < upper->value) upper = UpperCertificate{value, kind};
    };
    double q = 0.0;
    const bool flat = fam.space.rank() > 0 && fam.space.flat_exponent(&q);
    if (flat && std::fabs(s - q) <= 1e-12) {
        double u = 0.0;
        for (const Matrix& m : fam.members) u = std::max(u, member_norm_upper(m, fam.space, q));
        consider(u, CertificateKind::uniform_norm);
    }
    if (fam.tag != StructureTag::generic) {
        try {
            consider(exact_ls_bound_structured(fam, s), CertificateKind::closed_form);
        } catch (const std::invalid_argument&) {
        }
    }
    if (hints.known_low && hints.known_high) {
        try {
            consider(interpolation_certificate(hints.known_low->second, hints.known_high->second,
                                               hints.known_low->first, hints.known_high->first, s),
                     CertificateKind::interpolation);
        } catch (const std::invalid_argument&) {
        }
    }
    if (hints.adjoint_value) consider(*hints.adjoint_value, CertificateKind::duality);
    est.upper = upper;
    return est;
}

double rademacher_bound_estimate(const OperatorFamily& fam, const SearchOptions& opts) {
    // L^2 average over sign patterns of the norm of the signed sums; exact
    // enumeration up to 12 slots, seeded sampling beyond.
    const uint64_t pattern_seed = Rng(opts.seed).fork(0x5161u).next();
    Objective obj = [&fam, pattern_seed](const std::vector<std::vector<double>>& xs,
                                         const std::vector<std::vector<double>>& txs) {
        const size_t N = xs.size();
        const size_t D = xs[0].size();
        std::vector<double> sx(D), stx(D);
        double num = 0.0, den = 0.0;
        auto accumulate = [&](uint64_t bits) {
            for (size_t i = 0; i < D; ++i) sx[i] = stx[i] = 0.0;
            for (size_t n = 0; n < N; ++n) {
                const double sign = (bits >> n) & 1u ? -1.0 : 1.0;
                for (size_t i = 0; i < D; ++i) {
                    sx[i] += sign * xs[n][i];
                    stx[i] += sign * txs[n][i];
                }
            }
            const double a = mixed_norm_flat(sx, fam.space);
            const double b = mixed_norm_flat(stx, fam.space);
            num += b * b;
            den += a * a;
        };
        if (N <= 12) {
            const uint64_t total = uint64_t{1} << N;
            for (uint64_t bits = 0; bits < total; ++bits) accumulate(bits);
        } else {
            Rng rng(pattern_seed);
            for (int t = 0; t < 256; ++t) accumulate(rng.next());
        }
        if (!(den > 1e-300)) return -1.0;
        return std::sqrt(num / den);
    };
    SearchResult found = RatioSearch(fam, obj, opts).run();
    if (found.value < 0.0) {
        if (!family_is_zero(fam))
            throw std::runtime_error("rademacher bound search found no valid tuple");
        return 0.0;
    }
    return found.value;
}

}  // namespace weightlab::sbound
