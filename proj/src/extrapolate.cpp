#include "weightlab/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weightlab/maximal.hpp"
#include "weightlab/parallel.hpp"

namespace weightlab::extrapolate {

RdFResult rdf_iterate(const GridFunction& u, double p, const Weight& w, int K,
                      std::optional<double> m_override) {
    check_exponent(p);
    if (K < 1) throw std::invalid_argument("rdf_iterate needs K >= 1");
    if (u.grid != w.fn.grid) throw std::invalid_argument("rdf_iterate: grid mismatch");
    double peak = 0.0;
    for (double v : u.v) {
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("rdf_iterate needs u >= 0 and finite");
        peak = std::max(peak, v);
    }
    if (peak == 0.0) throw std::invalid_argument("rdf_iterate needs u not identically 0");

    double m;
    if (m_override) {
        m = *m_override;
        if (!(m > 0.0)) throw std::invalid_argument("rdf_iterate: m must be positive");
    } else {
        const auto est = maximal::maximal_norm_lower(p, w, 16, 0x5eedbeefULL);
        m = 2.0 * std::max(1.0, est.lower_bound);
    }

    const size_t n = u.v.size();
    const double damp = 1.0 / (2.0 * m);
    GridFunction term = u;       // k-th term M^k u / (2m)^k
    std::vector<double> acc(n, 0.0);  // sum of terms k = 1..K
    double prev_norm = weighted_lp_norm(u, p, w);
    const double u_norm = prev_norm;
    int growing = 0;
    for (int k = 1; k <= K; ++k) {
        GridFunction next = maximal::maximal_function(term);
        for (double& v : next.v) v *= damp;
        const double norm = weighted_lp_norm(next, p, w);
        growing = (norm > prev_norm) ? growing + 1 : 0;
        if (growing >= 2 || norm > 64.0 * u_norm)
            throw std::invalid_argument(
                "rdf_iterate: damped maximal series is diverging; increase m");
        for (size_t i = 0; i < n; ++i) acc[i] += next.v[i];
        term = std::move(next);
        prev_norm = norm;
    }

    RdFResult res;
    res.input = u;
    res.output = GridFunction{u.grid, std::vector<double>(n)};
    // u enters last: rounding is monotone, so Ru >= u holds exactly.
    for (size_t i = 0; i < n; ++i) res.output.v[i] = acc[i] + u.v[i];
    res.terms = K;
    res.m_norm_used = m;
    res.p = p;

    for (size_t i = 0; i < n; ++i)
        if (res.output.v[i] < u.v[i]) throw std::logic_error("rdf_iterate: majorant lost u <= Ru");

    const double ru_norm = weighted_lp_norm(res.output, p, w);
    res.norm_ratio = ru_norm / u_norm;
    if (res.norm_ratio > 2.0 * (1.0 + 1e-9))
        throw std::invalid_argument("rdf_iterate: ||Ru|| exceeded 2||u||; increase m");

    // Tail term 2m M^{K+1}u/(2m)^{K+1}: by subadditivity of the maximal
    // function, M(Ru) <= 2m Ru + tail pointwise.
    GridFunction tail = maximal::maximal_function(term);
    for (double& v : tail.v) v *= damp * 2.0 * m;
    res.tail_norm = weighted_lp_norm(tail, p, w);
    res.tail_relative = res.tail_norm / ru_norm;

    const GridFunction m_ru = maximal::maximal_function(res.output);
    double excess = -kInf;
    double scale = 1.0;
    for (size_t i = 0; i < n; ++i) {
        excess = std::max(excess, m_ru.v[i] - 2.0 * m * res.output.v[i] - tail.v[i]);
        scale = std::max(scale, 2.0 * m * res.output.v[i]);
    }
    res.max_pointwise_excess = excess;
    if (excess > 1e-9 * scale)
        throw std::logic_error("rdf_iterate: self-improvement bound violated beyond rounding");
    return res;
}

// ---------------------------------------------------------------------------
// Extrapolation verification.
// ---------------------------------------------------------------------------

namespace {

double pair_ratio(const LatticeFunction& f, const LatticeFunction& g, double p, const Weight& w) {
    const double den = lattice_lp_norm(g, p, w);
    if (!(den > 0.0)) throw std::invalid_argument("degenerate generator: ||g|| = 0");
    return lattice_lp_norm(f, p, w) / den;
}

EnvelopeFit fit_envelope(const weights::ConsistencyProfile& alpha_hat,
                         const std::vector<ExtrapolationSample>& conclusion) {
    static const double kCGrid[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    static const double kEGrid[] = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0};
    EnvelopeFit best;
    best.leading = kInf;
    for (double c : kCGrid)
        for (double e : kEGrid) {
            double leading = 0.0;
            for (const ExtrapolationSample& smp : conclusion) {
                const double denom = alpha_hat.eval(c * std::pow(smp.ap_constant, e));
                if (!(denom > 0.0)) {
                    leading = kInf;
                    break;
                }
                leading = std::max(leading, smp.ratio / denom);
            }
            if (leading < best.leading) best = EnvelopeFit{c, e, leading};
        }
    return best;
}

}  // namespace

ExtrapolationReport verify_mixed_extrapolation(const LatticePairGenerator& gen, double p0,
                                               const std::vector<double>& p_list,
                                               const MixedSpace& space,
                                               const std::vector<Weight>& weight_family,
                                               int samples, uint64_t seed) {
    check_exponent(p0);
    for (double p : p_list) check_exponent(p);
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    if (weight_family.empty()) throw std::invalid_argument("need at least one weight");

    // Draw every sample up front, one fork per index; ratios at every
    // (p, w) then refer to the same draws.
    Rng root(seed);
    std::vector<Rng> forks;
    forks.reserve(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) forks.push_back(root.fork(static_cast<uint64_t>(i)));
    std::vector<std::pair<LatticeFunction, LatticeFunction>> pairs(static_cast<size_t>(samples));
    parallel_for(samples, [&](int i) { pairs[static_cast<size_t>(i)] = gen(forks[static_cast<size_t>(i)]); });
    for (const auto& [f, g] : pairs) {
        if (!(f.space == space) || !(g.space == space))
            throw std::invalid_argument("generator fiber space mismatch");
        if (!(f.grid == g.grid) || !(f.grid == weight_family.front().fn.grid))
            throw std::invalid_argument("generator grid mismatch");
    }
    for (const Weight& w : weight_family)
        if (!(w.fn.grid == pairs.front().first.grid))
            throw std::invalid_argument("weight grid mismatch");

    ExtrapolationReport report;
    report.p0 = p0;
    report.axes = space.rank();

    auto sweep = [&](double p) {
        std::vector<ExtrapolationSample> out;
        out.reserve(weight_family.size());
        for (const Weight& w : weight_family) {
            ExtrapolationSample smp;
            smp.ap_constant = weights::ap_constant(w, p).constant;
            for (const auto& [f, g] : pairs)
                smp.ratio = std::max(smp.ratio, pair_ratio(f, g, p, w));
            out.push_back(smp);
        }
        return out;
    };

    report.hypothesis = sweep(p0);
    {
        std::vector<std::pair<double, double>> pts;
        for (const ExtrapolationSample& smp : report.hypothesis)
            pts.emplace_back(smp.ap_constant, smp.ratio);
        report.alpha_hat = weights::fit_consistency_profile(std::move(pts));
    }

    const double cap = std::pow(4.0, std::max(1, report.axes));
    report.verdict = true;
    for (double p : p_list) {
        ExtrapolationTarget tgt;
        tgt.p = p;
        tgt.conclusion = sweep(p);
        std::vector<std::pair<double, double>> pts;
        bool finite = true;
        for (const ExtrapolationSample& smp : tgt.conclusion) {
            pts.emplace_back(smp.ap_constant, smp.ratio);
            finite = finite && std::isfinite(smp.ratio);
        }
        tgt.envelope = weights::fit_consistency_profile(std::move(pts));
        tgt.fit = fit_envelope(report.alpha_hat, tgt.conclusion);
        tgt.pass = finite && tgt.fit.leading <= cap * (1.0 + 1e-9);
        report.verdict = report.verdict && tgt.pass;
        report.targets.push_back(std::move(tgt));
    }
    report.note = "verdict relative to " + std::to_string(samples) + " seeded samples over " +
                  std::to_string(weight_family.size()) + " weights";
    return report;
}

ExtrapolationReport verify_extrapolation_pair(const PairGenerator& gen, double p0,
                                              const std::vector<double>& p_list,
                                              const std::vector<Weight>& weight_family,
                                              int samples, uint64_t seed) {
    const MixedSpace scalar({}, {});
    LatticePairGenerator wrapped = [&gen, &scalar](Rng& rng) {
        auto [f, g] = gen(rng);
        LatticeFunction lf{f.grid, scalar, std::move(f.v)};
        LatticeFunction lg{g.grid, scalar, std::move(g.v)};
        return std::make_pair(std::move(lf), std::move(lg));
    };
    return verify_mixed_extrapolation(wrapped, p0, p_list, scalar, weight_family, samples, seed);
}

// ---------------------------------------------------------------------------
// Domination weights.
// ---------------------------------------------------------------------------

std::vector<double> dominating_weight_structured(const std::vector<double>& u,
                                                 const sbound::OperatorFamily& fam, double s) {
    double q = 0.0;
    if (fam.space.rank() == 0 || !fam.space.flat_exponent(&q))
        throw std::invalid_argument("domination needs a flat-exponent space");
    if (!(s >= 1.0) || !(s < q)) throw std::invalid_argument("domination needs 1 <= s < q");
    const size_t D = static_cast<size_t>(fam.space.dim());
    if (u.size() != D) throw std::invalid_argument("u has wrong dimension");
    for (double v : u)
        if (v < 0.0 || !std::isfinite(v)) throw std::invalid_argument("u must be >= 0 and finite");

    const std::vector<double> mu = fam.space.flat_masses();
    std::vector<double> raw(D, 0.0);
    if (fam.tag == sbound::StructureTag::multiplication) {
        for (const sbound::Matrix& mem : fam.members) {
            const std::vector<double> d = sbound::extract_diagonal(mem);
            for (size_t k = 0; k < D; ++k)
                raw[k] = std::max(raw[k], std::pow(std::fabs(d[k]), s) * u[k]);
        }
    } else if (fam.tag == sbound::StructureTag::weighted_composition) {
        for (const sbound::Matrix& mem : fam.members) {
            const sbound::WeightedComposition wc = sbound::extract_weighted_composition(mem);
            for (size_t l = 0; l < D; ++l) {
                const size_t k = static_cast<size_t>(wc.sigma_inverse[l]);
                raw[l] = std::max(raw[l], mu[k] / mu[l] * std::pow(std::fabs(wc.m[k]), s) * u[k]);
            }
        }
    } else {
        throw std::invalid_argument("domination needs a structure tag");
    }

    const double r_bound = sbound::exact_ls_bound_structured(fam, s);
    if (r_bound == 0.0) return std::vector<double>(D, 0.0);
    const double scale = std::pow(r_bound, s);
    for (double& v : raw) v /= scale;
    return raw;
}

DominationReport verify_domination(const std::vector<double>& U, const std::vector<double>& u,
                                   const sbound::OperatorFamily& fam, double s, int trials,
                                   uint64_t seed) {
    double q = 0.0;
    if (fam.space.rank() == 0 || !fam.space.flat_exponent(&q))
        throw std::invalid_argument("domination needs a flat-exponent space");
    if (!(s >= 1.0) || !(s < q)) throw std::invalid_argument("domination needs 1 <= s < q");
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const size_t D = static_cast<size_t>(fam.space.dim());
    if (U.size() != D || u.size() != D) throw std::invalid_argument("weight dimension mismatch");

    const std::vector<double> mu = fam.space.flat_masses();
    const double r = conjugate_exponent(q / s);
    auto lr_norm = [&](const std::vector<double>& v) {
        double acc = 0.0;
        for (size_t i = 0; i < D; ++i) acc += mu[i] * std::pow(std::fabs(v[i]), r);
        return std::pow(acc, 1.0 / r);
    };

    DominationReport rep;
    rep.norm_u = lr_norm(u);
    rep.norm_upper = lr_norm(U);

    const double r_bound = sbound::exact_ls_bound_structured(fam, s);
    const double member_scale = r_bound > 0.0 ? 1.0 / r_bound : 0.0;

    auto violation_for = [&](const std::vector<double>& phi) {
        double rhs = 0.0;
        for (size_t i = 0; i < D; ++i) rhs += mu[i] * std::pow(std::fabs(phi[i]), s) * U[i];
        double worst = -kInf;
        std::vector<double> tphi(D);
        for (const sbound::Matrix& mem : fam.members) {
            mem.apply(phi, tphi);
            double lhs = 0.0;
            for (size_t i = 0; i < D; ++i)
                lhs += mu[i] * std::pow(std::fabs(member_scale * tphi[i]), s) * u[i];
            worst = std::max(worst, lhs - rhs);
        }
        return worst;
    };

    rep.worst_violation = -kInf;
    auto consider = [&](const std::vector<double>& phi) {
        const double v = violation_for(phi);
        if (v > rep.worst_violation) {
            rep.worst_violation = v;
            rep.counterexample = phi;
        }
    };
    std::vector<double> phi(D, 0.0);
    for (size_t i = 0; i < D; ++i) {
        std::fill(phi.begin(), phi.end(), 0.0);
        phi[i] = 1.0;
        consider(phi);
    }
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        Rng fork = rng.fork(static_cast<uint64_t>(t));
        for (size_t i = 0; i < D; ++i)
            phi[i] = fork.uniform() < 0.5 ? 0.0 : std::exp(1.5 * fork.normal());
        if (phi[static_cast<size_t>(fork.uniform_int(static_cast<int>(D)))] == 0.0)
            phi[static_cast<size_t>(fork.uniform_int(static_cast<int>(D)))] = 1.0;
        consider(phi);
    }
    rep.trials_checked = static_cast<int>(D) + trials;

    double scale = std::max(1.0, rep.norm_u);
    for (size_t i = 0; i < D; ++i) scale = std::max(scale, U[i]);
    const bool norms_ok = rep.norm_upper <= rep.norm_u * (1.0 + 1e-12);
    rep.pass = norms_ok && rep.worst_violation <= 1e-9 * scale;
    if (rep.worst_violation <= 1e-9 * scale) rep.counterexample.clear();
    return rep;
}

}  // namespace weightlab::extrapolate
