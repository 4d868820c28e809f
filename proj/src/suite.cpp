#include "weightlab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "weightlab/csv.hpp"
#include "weightlab/dualspace.hpp"
#include "weightlab/extrapolate.hpp"
#include "weightlab/intops.hpp"
#include "weightlab/kernels.hpp"
#include "weightlab/lattice.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/parallel.hpp"
#include "weightlab/rng.hpp"
#include "weightlab/sampling.hpp"
#include "weightlab/sbound.hpp"
#include "weightlab/weights.hpp"

namespace weightlab::suite {
namespace {

std::string num(double x) { return csv::format_double(x); }

struct Sizes {
    int c1_weights, c2_weights, c3_funcs, c4_funcs, c5_pairs, c5_base, c6_runs, c7_samples,
        c8_families, c9_families, c10_time, c10_space, c10_rad, c10_chain, c12_g, c12_tuples;
};

Sizes sizes_for(const std::string& size) {
    if (size == "small")
        return {200, 200, 100, 1000, 50, 1000, 100, 24, 20, 10, 64, 16, 3, 6, 100, 1000};
    if (size == "tiny") return {30, 30, 20, 100, 12, 120, 12, 8, 8, 4, 32, 8, 2, 3, 20, 100};
    throw std::invalid_argument("unknown suite size '" + size + "' (use small or tiny)");
}

// --- criterion 1: the dual weight's constant is the conjugate power -----

CriterionResult c1_ap_duality(Rng rng, const Sizes& z) {
    const int ns[] = {16, 64, 256};
    const double ps[] = {1.5, 2.0, 3.0};
    double worst = 0.0;
    for (int i = 0; i < z.c1_weights; ++i) {
        int n = ns[i % 3];
        Grid1D grid{-1.0, 2.0 / n, n};
        Weight w = sampling::random_weight(rng, grid);
        for (double p : ps) {
            double primal = weights::ap_constant(w, p).constant;
            double dual =
                weights::ap_constant(weights::dual_weight(w, p), conjugate_exponent(p)).constant;
            double want = std::pow(primal, 1.0 / (p - 1.0));
            worst = std::max(worst, std::fabs(dual - want) / want);
        }
    }
    return {1, "ap_duality", worst <= 1e-9, "max_rel_err=" + num(worst)};
}

// --- criterion 2: constants ordered across exponents --------------------

CriterionResult c2_ap_monotone(Rng rng, const Sizes& z) {
    const int ns[] = {16, 64};
    const double ps[] = {1.5, 2.0, 3.0, 5.0};
    double worst = -1.0;
    for (int i = 0; i < z.c2_weights; ++i) {
        int n = ns[i % 2];
        Grid1D grid{-1.0, 2.0 / n, n};
        Weight w = sampling::random_weight(rng, grid);
        double prev = weights::ap_constant(w, ps[0]).constant;
        for (int j = 1; j < 4; ++j) {
            double cur = weights::ap_constant(w, ps[j]).constant;
            worst = std::max(worst, (cur - prev) / prev);
            prev = cur;
        }
    }
    return {2, "ap_monotone", worst <= 1e-12, "max_increase=" + num(worst)};
}

// --- criterion 3: interval-enumeration oracle, bit for bit --------------

GridFunction brute_maximal(const GridFunction& f) {
    int n = f.grid.n;
    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (int a = 0; a < n; ++a) {
        double sum = 0.0;
        for (int b = a; b < n; ++b) {
            sum += std::fabs(f.v[static_cast<size_t>(b)]);
            double avg = sum / (b - a + 1);
            for (int i = a; i <= b; ++i)
                if (avg > out[static_cast<size_t>(i)]) out[static_cast<size_t>(i)] = avg;
        }
    }
    return GridFunction(f.grid, std::move(out));
}

CriterionResult c3_maximal_oracle(Rng rng, const Sizes& z) {
    int mismatched_cells = 0;
    for (int i = 0; i < z.c3_funcs; ++i) {
        int n = 4 + rng.uniform_int(61);
        Grid1D grid{0.0, 1.0 / n, n};
        GridFunction f = sampling::random_signed(rng, grid);
        GridFunction fast = maximal::maximal_function(f);
        GridFunction slow = brute_maximal(f);
        for (int c = 0; c < n; ++c)
            if (fast.v[static_cast<size_t>(c)] != slow.v[static_cast<size_t>(c)])
                ++mismatched_cells;
    }
    GridFunction worked(Grid1D{0.0, 0.25, 4}, {0.0, 4.0, 0.0, 0.0});
    GridFunction got = maximal::maximal_function(worked);
    bool worked_ok =
        got.v[0] == 2.0 && got.v[1] == 4.0 && got.v[2] == 2.0 && got.v[3] == 4.0 / 3.0;
    return {3, "maximal_oracle", mismatched_cells == 0 && worked_ok,
            "mismatched_cells=" + std::to_string(mismatched_cells) +
                " worked_example=" + (worked_ok ? "ok" : "bad")};
}

// --- criterion 4: kernel class soundness ---------------------------------

CriterionResult c4_kernel_class(Rng rng, const Sizes& z) {
    Grid1D grid{-1.0, 1.0 / 32, 64};
    kernels::CatalogParams prm{0.02, 8.0, 2, std::nullopt};
    const char* names[] = {"gaussian", "box", "exponential", "one_sided_exponential"};
    double worst = -1.0;
    int certified = 0;
    bool pass = true;
    for (const char* name : names) {
        kernels::Kernel k = kernels::catalog(name, prm, grid);
        auto verdict = kernels::in_class_k(k, 32, rng.next());
        if (verdict.status != kernels::Membership::certified) {
            pass = false;
            continue;
        }
        ++certified;
        for (int t = 0; t < z.c4_funcs; ++t) {
            GridFunction f = sampling::random_nonneg(rng, grid);
            GridFunction conv = kernels::convolve(k, f);
            GridFunction mf = maximal::maximal_function(f);
            double scale = 0.0;
            for (double x : mf.v) scale = std::max(scale, x);
            for (int c = 0; c < grid.n; ++c)
                worst = std::max(worst, (conv.v[static_cast<size_t>(c)] -
                                         mf.v[static_cast<size_t>(c)]) /
                                            scale);
        }
    }
    pass = pass && worst <= 1e-9;

    // Doubling the Gaussian mass must break the domination, with a witness.
    kernels::Kernel g = kernels::catalog("gaussian", prm, grid);
    std::vector<double> doubled = g.v;
    for (double& x : doubled) x *= 2.0;
    kernels::Kernel g2(g.radius, g.h, std::move(doubled));
    auto bad = kernels::in_class_k(g2, 64, rng.next());
    bool refuted = bad.status == kernels::Membership::refuted && bad.counterexample.has_value() &&
                   bad.violation_excess > 0.0;
    double recomputed = 0.0;
    if (refuted) {
        GridFunction conv = kernels::convolve(g2, *bad.counterexample);
        GridFunction mf = maximal::maximal_function(*bad.counterexample);
        recomputed = conv.v[static_cast<size_t>(bad.violation_cell)] -
                     mf.v[static_cast<size_t>(bad.violation_cell)];
        refuted = recomputed > 0.0;
    }
    return {4, "kernel_class", pass && refuted,
            "certified=" + std::to_string(certified) + " worst_excess=" + num(worst) +
                " mass2_refuted=" + (refuted ? "yes" : "no") +
                " witness_excess=" + num(recomputed)};
}

// --- criterion 5: fiberwise maximal operator: monotone, stable ratios ---

CriterionResult c5_lattice_maximal(Rng rng, const Sizes& z) {
    Grid1D grid{-0.5, 1.0 / 32, 32};
    MixedSpace space({MeasuredAxis::counting(2)}, {2.0});
    const double p = 2.0;
    Weight w = weights::power_weight(0.3, grid);

    double worst_mono = -1.0;
    for (int i = 0; i < z.c5_pairs; ++i) {
        LatticeFunction g = sampling::random_lattice_nonneg(rng, grid, space);
        LatticeFunction f = g;
        for (double& x : f.v) x *= rng.uniform();
        double ng = lattice_lp_norm(maximal::lattice_maximal(g), p, w);
        double nf = lattice_lp_norm(maximal::lattice_maximal(f), p, w);
        worst_mono = std::max(worst_mono, (nf - ng) / ng);
    }

    auto ratio_of = [&](const LatticeFunction& f) {
        return lattice_lp_norm(maximal::lattice_maximal(f), p, w) / lattice_lp_norm(f, p, w);
    };
    // Anchor the sample set with a lifted near-extremal scalar witness so
    // the max is already in the first half.
    auto est = maximal::maximal_norm_lower(p, w, 12, rng.next());
    std::vector<double> lifted(static_cast<size_t>(grid.n) * 2);
    for (int c = 0; c < grid.n; ++c)
        lifted[2 * c] = lifted[2 * c + 1] = est.witness.v[static_cast<size_t>(c)];
    double r1 = ratio_of(LatticeFunction(grid, space, std::move(lifted)));
    for (int i = 1; i < z.c5_base; ++i)
        r1 = std::max(r1, ratio_of(sampling::random_lattice_nonneg(rng, grid, space)));
    double r2 = r1;
    for (int i = 0; i < z.c5_base; ++i)
        r2 = std::max(r2, ratio_of(sampling::random_lattice_nonneg(rng, grid, space)));
    double drift = (r2 - r1) / r1;
    bool pass = worst_mono <= 1e-12 && std::isfinite(r2) && drift < 0.10;
    return {5, "lattice_maximal", pass,
            "max_monotone_violation=" + num(worst_mono) + " ratio_max=" + num(r1) +
                " doubled_drift=" + num(drift)};
}

// --- criterion 6: damped maximal iteration invariants --------------------

CriterionResult c6_rdf(Rng rng, const Sizes& z) {
    const double ps[] = {1.5, 2.0, 3.0};
    const double as[] = {0.0, 0.3, 0.6, 0.9};
    Grid1D grid{-0.5, 1.0 / 48, 48};
    double worst_ratio = 0.0, worst_tail = 0.0;
    bool lower_exact = true;
    for (int i = 0; i < z.c6_runs; ++i) {
        GridFunction u = sampling::random_nonneg(rng, grid);
        Weight w = weights::power_weight(as[i % 4], grid);
        auto res = extrapolate::rdf_iterate(u, ps[i % 3], w, 16);
        for (int c = 0; c < grid.n; ++c)
            if (res.output.v[static_cast<size_t>(c)] < res.input.v[static_cast<size_t>(c)])
                lower_exact = false;
        worst_ratio = std::max(worst_ratio, res.norm_ratio);
        worst_tail = std::max(worst_tail, res.tail_relative);
    }
    bool pass = lower_exact && worst_ratio <= 2.0 + 1e-9 && worst_tail < 1e-6;
    return {6, "rdf_iteration", pass,
            std::string("pointwise_lower=") + (lower_exact ? "exact" : "violated") +
                " max_norm_ratio=" + num(worst_ratio) + " max_tail_rel=" + num(worst_tail)};
}

// --- criterion 7: extrapolation pipelines, rank 0/1/2 --------------------

double report_diff(const extrapolate::ExtrapolationReport& a,
                   const extrapolate::ExtrapolationReport& b) {
    double d = 0.0;
    auto upd = [&d](double x, double y) { d = std::max(d, std::fabs(x - y)); };
    auto upd_vec = [&](const std::vector<double>& x, const std::vector<double>& y) {
        if (x.size() != y.size()) {
            d = kInf;
            return;
        }
        for (size_t i = 0; i < x.size(); ++i) upd(x[i], y[i]);
    };
    auto upd_samples = [&](const std::vector<extrapolate::ExtrapolationSample>& x,
                           const std::vector<extrapolate::ExtrapolationSample>& y) {
        if (x.size() != y.size()) {
            d = kInf;
            return;
        }
        for (size_t i = 0; i < x.size(); ++i) {
            upd(x[i].ap_constant, y[i].ap_constant);
            upd(x[i].ratio, y[i].ratio);
        }
    };
    upd(a.p0, b.p0);
    upd_samples(a.hypothesis, b.hypothesis);
    upd_vec(a.alpha_hat.x, b.alpha_hat.x);
    upd_vec(a.alpha_hat.y, b.alpha_hat.y);
    if (a.targets.size() != b.targets.size()) return kInf;
    for (size_t t = 0; t < a.targets.size(); ++t) {
        upd(a.targets[t].p, b.targets[t].p);
        upd_samples(a.targets[t].conclusion, b.targets[t].conclusion);
        upd_vec(a.targets[t].envelope.x, b.targets[t].envelope.x);
        upd_vec(a.targets[t].envelope.y, b.targets[t].envelope.y);
        upd(a.targets[t].fit.c, b.targets[t].fit.c);
        upd(a.targets[t].fit.e, b.targets[t].fit.e);
        upd(a.targets[t].fit.leading, b.targets[t].fit.leading);
        if (a.targets[t].pass != b.targets[t].pass) return kInf;
    }
    return d;
}

bool envelopes_nondecreasing(const extrapolate::ExtrapolationReport& rep) {
    auto mono = [](const std::vector<double>& y) {
        for (size_t i = 1; i < y.size(); ++i)
            if (y[i] < y[i - 1]) return false;
        return true;
    };
    if (!mono(rep.alpha_hat.y)) return false;
    for (const auto& t : rep.targets)
        if (!mono(t.envelope.y)) return false;
    return true;
}

CriterionResult c7_extrapolation(Rng rng, const Sizes& z) {
    Grid1D grid{-0.5, 1.0 / 32, 32};
    std::vector<Weight> ws;
    for (double a : {0.0, 0.3, 0.6, 0.9}) ws.push_back(weights::power_weight(a, grid));
    std::vector<double> targets{1.5, 3.0};
    uint64_t seed = rng.next();

    extrapolate::PairGenerator scalar_gen = [grid](Rng& r) {
        GridFunction g = sampling::random_nonneg(r, grid);
        return std::make_pair(maximal::maximal_function(g), g);
    };
    auto rep_scalar =
        extrapolate::verify_extrapolation_pair(scalar_gen, 2.0, targets, ws, z.c7_samples, seed);

    MixedSpace rank0({}, {});
    extrapolate::LatticePairGenerator gen0 = [grid, rank0](Rng& r) {
        GridFunction g = sampling::random_nonneg(r, grid);
        GridFunction mg = maximal::maximal_function(g);
        return std::make_pair(LatticeFunction(grid, rank0, std::move(mg.v)),
                              LatticeFunction(grid, rank0, std::move(g.v)));
    };
    auto rep0 =
        extrapolate::verify_mixed_extrapolation(gen0, 2.0, targets, rank0, ws, z.c7_samples, seed);
    double d0 = report_diff(rep_scalar, rep0);

    MixedSpace space1({MeasuredAxis::counting(2)}, {2.0});
    extrapolate::LatticePairGenerator gen1 = [grid, space1](Rng& r) {
        LatticeFunction g = sampling::random_lattice_nonneg(r, grid, space1);
        return std::make_pair(maximal::lattice_maximal(g), g);
    };
    auto rep1 = extrapolate::verify_mixed_extrapolation(gen1, 2.0, targets, space1, ws,
                                                        z.c7_samples, rng.next());

    MixedSpace space2({MeasuredAxis::counting(2), MeasuredAxis::counting(3)}, {2.0, 3.0});
    extrapolate::LatticePairGenerator gen2 = [grid, space2](Rng& r) {
        LatticeFunction g = sampling::random_lattice_nonneg(r, grid, space2);
        return std::make_pair(maximal::lattice_maximal(g), g);
    };
    auto rep2 = extrapolate::verify_mixed_extrapolation(gen2, 2.0, targets, space2, ws,
                                                        z.c7_samples, rng.next());

    bool verdicts = rep_scalar.verdict && rep0.verdict && rep1.verdict && rep2.verdict;
    bool mono = envelopes_nondecreasing(rep_scalar) && envelopes_nondecreasing(rep1) &&
                envelopes_nondecreasing(rep2);
    bool pass = verdicts && mono && d0 <= 1e-12;
    return {7, "extrapolation", pass,
            std::string("verdicts=") + (verdicts ? "pass" : "fail") +
                " scalar_vs_rank0_diff=" + num(d0) + " envelopes=" +
                (mono ? "nondecreasing" : "violated")};
}

// --- criterion 8: search lower bounds vs exact structured values --------

sbound::OperatorFamily random_structured_family(Rng& rng, int index) {
    int dim = 2 + index % 3;
    bool mult = index % 2 == 0;
    std::vector<double> masses(static_cast<size_t>(dim));
    for (double& m : masses) m = index % 3 == 0 ? 1.0 : rng.uniform(0.5, 2.0);
    const double qs[] = {1.5, 2.0, 3.0};
    MixedSpace space({MeasuredAxis(masses)}, {qs[index % 3]});
    int members = 2 + index % 2;
    std::vector<sbound::Matrix> ms;
    for (int j = 0; j < members; ++j) {
        if (mult) {
            std::vector<double> d(static_cast<size_t>(dim));
            for (double& x : d) x = rng.uniform(0.25, 2.25);
            if (index % 5 == 0) d[static_cast<size_t>(rng.uniform_int(dim))] = 0.0;
            ms.push_back(sbound::Matrix::diagonal(d));
        } else {
            std::vector<int> sigma(static_cast<size_t>(dim));
            for (int i = 0; i < dim; ++i) sigma[static_cast<size_t>(i)] = i;
            for (int i = dim - 1; i > 0; --i)
                std::swap(sigma[static_cast<size_t>(i)],
                          sigma[static_cast<size_t>(rng.uniform_int(i + 1))]);
            sbound::Matrix m(dim, dim);
            for (int i = 0; i < dim; ++i) {
                double v = rng.uniform(0.25, 2.25);
                if (rng.uniform() < 0.3) v = -v;
                m.at(i, sigma[static_cast<size_t>(i)]) = v;
            }
            ms.push_back(std::move(m));
        }
    }
    return sbound::make_family(space, std::move(ms),
                               mult ? sbound::StructureTag::multiplication
                                    : sbound::StructureTag::weighted_composition);
}

CriterionResult c8_ls_sandwich(Rng rng, const Sizes& z) {
    const double s_choices[] = {1.0, 1.25, 2.0, 4.0, 8.0, kInf};
    double worst_deficit = 0.0;   // how far below 0.9 * exact the search fell
    double worst_overshoot = 0.0; // search above exact
    double worst_cert_gap = 0.0;  // certificate below lower bound
    double worst_adjoint = 0.0;   // adjoint search disagreement
    for (int i = 0; i < z.c8_families; ++i) {
        Rng fam_rng = rng.fork(static_cast<uint64_t>(i));
        auto fam = random_structured_family(fam_rng, i);
        double s = s_choices[i % 6];
        double exact = sbound::exact_ls_bound_structured(fam, s);
        sbound::SearchOptions opts{4, 24, 150, 0.1, fam_rng.next()};
        auto est = sbound::estimate_ls_bound(fam, s, opts);
        worst_deficit = std::max(worst_deficit, 0.9 - est.lower / exact);
        worst_overshoot = std::max(worst_overshoot, est.lower - exact * (1.0 + 1e-9) - 1e-7);
        if (est.upper)
            worst_cert_gap =
                std::max(worst_cert_gap, est.lower - est.upper->value * (1.0 + 1e-9));

        double r0 = sbound::exact_ls_bound_structured(fam, 1.0);
        double r1 = sbound::exact_ls_bound_structured(fam, kInf);
        double ci = sbound::interpolation_certificate(r0, r1, 1.0, kInf, s);
        worst_cert_gap = std::max(worst_cert_gap, est.lower - ci * (1.0 + 1e-9));

        double sp = conjugate_exponent(s);
        auto adj = sbound::adjoint_family(fam);
        double dual_cert = sbound::exact_ls_bound_structured(adj, sp);
        worst_cert_gap = std::max(worst_cert_gap, est.lower - dual_cert * (1.0 + 1e-9));

        sbound::SearchOptions adj_opts{4, 24, 150, 0.1, fam_rng.next()};
        auto est_adj = sbound::estimate_ls_bound(adj, sp, adj_opts);
        double agree =
            std::fabs(est_adj.lower - est.lower) / std::max(est.lower, est_adj.lower);
        worst_adjoint = std::max(worst_adjoint, agree);
    }
    bool pass = worst_deficit <= 0.0 && worst_overshoot <= 0.0 && worst_cert_gap <= 0.0 &&
                worst_adjoint <= 0.05;
    return {8, "ls_sandwich", pass,
            "worst_search_deficit=" + num(worst_deficit) + " worst_overshoot=" +
                num(worst_overshoot) + " worst_cert_gap=" + num(worst_cert_gap) +
                " adjoint_disagreement=" + num(worst_adjoint)};
}

// --- criterion 9: V shape over s at q = 2 --------------------------------

CriterionResult c9_v_shape(Rng rng, const Sizes& z) {
    const double s_grid[] = {1.25, 1.5, 2.0, 3.0, 4.0, 8.0};
    double worst = 0.0;
    for (int i = 0; i < z.c9_families; ++i) {
        int dim = 3 + i % 4;
        MixedSpace space({MeasuredAxis::counting(dim)}, {2.0});
        int members = 2 + i % 2;
        std::vector<sbound::Matrix> ms;
        for (int j = 0; j < members; ++j) {
            std::vector<int> sigma(static_cast<size_t>(dim));
            for (int c = 0; c < dim; ++c) sigma[static_cast<size_t>(c)] = c;
            for (int c = dim - 1; c > 0; --c)
                std::swap(sigma[static_cast<size_t>(c)],
                          sigma[static_cast<size_t>(rng.uniform_int(c + 1))]);
            sbound::Matrix m(dim, dim);
            for (int c = 0; c < dim; ++c) m.at(c, sigma[static_cast<size_t>(c)]) = rng.uniform(0.5, 2.0);
            ms.push_back(std::move(m));
        }
        auto fam = sbound::make_family(space, std::move(ms),
                                       sbound::StructureTag::weighted_composition);
        double vals[6];
        for (int k = 0; k < 6; ++k) vals[k] = sbound::exact_ls_bound_structured(fam, s_grid[k]);
        for (int k = 1; k < 6; ++k) {
            bool rising_leg = s_grid[k] > 2.0;
            double step = rising_leg ? vals[k - 1] - vals[k] : vals[k] - vals[k - 1];
            worst = std::max(worst, step / vals[k - 1]);
        }
    }
    return {9, "v_shape", worst <= 1e-12, "worst_shape_violation=" + num(worst)};
}

// --- criterion 10: heat family over certified kernels --------------------

CriterionResult c10_square_function(Rng rng, const Sizes& z) {
    intops::ExperimentConfig cfg;
    cfg.kernel_names = {"gaussian", "box", "one_sided_exponential"};
    cfg.kernel_params = {0.005, 8.0, 2, std::nullopt};
    cfg.time_grid = Grid1D{0.0, 1.0 / z.c10_time, z.c10_time};
    cfg.space_cells = z.c10_space;
    cfg.space_h = 1.0 / z.c10_space;
    cfg.family = "heat";
    cfg.diffusion_scale = 2e-4;
    cfg.member_mode = "kernels";
    cfg.p = 2.0;
    cfg.q = 2.0;
    cfg.s_list = {2.0};
    cfg.weight_powers = {0.0, 0.3, 0.6};
    cfg.search = sbound::SearchOptions{3, 3, 30, 0.1, 0};
    cfg.rademacher_tuple = z.c10_rad;
    cfg.chain_trials = z.c10_chain;
    cfg.seed = rng.next();
    auto base = intops::theorem_experiment(cfg);

    auto doubled_cfg = cfg;
    doubled_cfg.rademacher_tuple = 2 * z.c10_rad;
    doubled_cfg.chain_trials = 0;
    auto doubled = intops::theorem_experiment(doubled_cfg);

    bool certified = true;
    for (const auto& v : base.kernel_verdicts)
        certified = certified && v.find(":certified") != std::string::npos;
    bool finite = base.rademacher.size() == cfg.weight_powers.size() &&
                  doubled.rademacher.size() == base.rademacher.size();
    double drift = 0.0;
    if (finite)
        for (size_t i = 0; i < base.rademacher.size(); ++i) {
            double a = base.rademacher[i].value, b = doubled.rademacher[i].value;
            finite = finite && std::isfinite(a) && std::isfinite(b) && a > 0.0;
            drift = std::max(drift, std::fabs(b * b - a * a) / (a * a));
        }
    bool mono = true;
    for (size_t i = 1; i < base.envelope.y.size(); ++i)
        mono = mono && base.envelope.y[i] >= base.envelope.y[i - 1];
    bool pass = certified && finite && drift <= 0.10 && base.chain_ok && mono &&
                !base.envelope.y.empty();
    return {10, "square_function_bound", pass,
            std::string("kernels=") + (certified ? "certified" : "uncertified") +
                " rademacher_sq_drift=" + num(drift) + " chain=" +
                (base.chain_ok ? "ok" : "violated") + " envelope_points=" +
                std::to_string(base.envelope.y.size())};
}

// --- criterion 11: integral-operator bound vs structured certificate ----

CriterionResult c11_intop_sandwich(Rng rng, const Sizes& z) {
    intops::ExperimentConfig cfg;
    cfg.kernel_names = {"one_sided_exponential"};
    cfg.kernel_params = {0.005, 8.0, 2, std::nullopt};
    cfg.time_grid = Grid1D{0.0, 1.0 / z.c10_time, z.c10_time};
    cfg.space_cells = z.c10_space;
    cfg.space_h = 1.0 / z.c10_space;
    cfg.family = "multiplication";
    cfg.multiplication_members = 3;
    cfg.member_mode = "evolution";
    cfg.p = 3.0;
    cfg.q = 3.0;
    cfg.s_list = {1.25, 2.0};
    cfg.weight_powers = {0.0, 0.3, 0.6};
    cfg.search = sbound::SearchOptions{4, 4, 50, 0.1, 0};
    cfg.rademacher_tuple = 0;
    cfg.chain_trials = z.c10_chain;
    cfg.seed = rng.next();
    auto rep = intops::theorem_experiment(cfg);

    bool certified = true;
    for (const auto& v : rep.kernel_verdicts)
        certified = certified && v.find(":certified") != std::string::npos;
    bool rows_ok = rep.rows.size() == cfg.s_list.size() * cfg.weight_powers.size();
    double worst_margin = 0.0;  // lower / certificate, largest
    for (const auto& row : rep.rows) {
        rows_ok = rows_ok && row.structured_certificate > 0.0 && std::isfinite(row.lower);
        if (row.structured_certificate > 0.0)
            worst_margin = std::max(worst_margin, row.lower / row.structured_certificate);
    }
    bool pass = certified && rows_ok && rep.sandwich_ok && rep.chain_ok;
    return {11, "intop_sandwich", pass,
            std::string("sandwich=") + (rep.sandwich_ok ? "ok" : "violated") +
                " max_lower_over_certificate=" + num(worst_margin) + " rows=" +
                std::to_string(rep.rows.size())};
}

// --- criterion 12: norming witnesses and tuple-norm chains ---------------

CriterionResult c12_duality(Rng rng, const Sizes& z) {
    std::vector<MeasuredAxis> axes{MeasuredAxis::counting(4), MeasuredAxis::counting(3),
                                   MeasuredAxis::counting(2)};
    double worst_gap = 0.0;
    for (int i = 0; i < z.c12_g; ++i) {
        int rank = 1 + i % 3;
        std::vector<MeasuredAxis> ax(axes.begin(), axes.begin() + rank);
        std::vector<double> q(static_cast<size_t>(rank));
        for (double& e : q) e = rng.uniform(1.25, 8.0);
        MixedSpace sp(ax, q);
        std::vector<double> g(static_cast<size_t>(sp.dim()));
        bool nonzero = false;
        for (double& x : g) {
            x = rng.uniform() < 0.2 ? 0.0 : rng.normal();
            nonzero = nonzero || x != 0.0;
        }
        if (!nonzero) g[0] = 1.0;
        auto wit = dualspace::norming_function(g, sp);
        double denom = wit.f_norm * wit.g_dual_norm;
        if (denom > 0.0)
            worst_gap = std::max(worst_gap, std::fabs(wit.pairing_value - denom) / denom);
    }

    MixedSpace sp3(axes, {2.0, 3.0, 1.5});
    auto rep_a = dualspace::tuple_duality_constants(sp3, 4, 2.0, z.c12_tuples, rng.next());
    auto rep_b = dualspace::tuple_duality_constants(sp3, 3, 1.5, z.c12_tuples / 2, rng.next());
    bool chains = rep_a.chain_ok && rep_b.chain_ok;
    double tight_err =
        std::fabs(rep_a.identical_ratio_1_r - rep_a.identical_expected_1_r) /
        rep_a.identical_expected_1_r;
    tight_err = std::max(
        tight_err, std::fabs(rep_a.identical_ratio_r_inf - rep_a.identical_expected_r_inf) /
                       rep_a.identical_expected_r_inf);
    bool pass = worst_gap <= 1e-8 && chains && tight_err <= 1e-12;
    return {12, "duality_witnesses", pass,
            "worst_holder_gap=" + num(worst_gap) + std::string(" chains=") +
                (chains ? "ok" : "violated") + " tight_witness_err=" + num(tight_err)};
}

struct ThreadGuard {
    explicit ThreadGuard(int threads) { if (threads > 0) set_thread_override(threads); }
    ~ThreadGuard() { set_thread_override(0); }
};

}  // namespace

BatteryResult run_battery(uint64_t seed, const std::string& size, int threads) {
    Sizes z = sizes_for(size);
    ThreadGuard guard(threads);
    Rng root(seed);
    std::vector<Rng> forks;
    forks.reserve(12);
    for (int i = 0; i < 12; ++i) forks.push_back(root.fork(0xC1 + static_cast<uint64_t>(i)));

    using Runner = std::function<CriterionResult(Rng, const Sizes&)>;
    struct Entry {
        int id;
        const char* name;
        Runner fn;
    };
    const Entry entries[] = {
        {1, "ap_duality", c1_ap_duality},
        {2, "ap_monotone", c2_ap_monotone},
        {3, "maximal_oracle", c3_maximal_oracle},
        {4, "kernel_class", c4_kernel_class},
        {5, "lattice_maximal", c5_lattice_maximal},
        {6, "rdf_iteration", c6_rdf},
        {7, "extrapolation", c7_extrapolation},
        {8, "ls_sandwich", c8_ls_sandwich},
        {9, "v_shape", c9_v_shape},
        {10, "square_function_bound", c10_square_function},
        {11, "intop_sandwich", c11_intop_sandwich},
        {12, "duality_witnesses", c12_duality},
    };

    BatteryResult out;
    out.all_pass = true;
    for (const auto& e : entries) {
        CriterionResult row;
        try {
            row = e.fn(forks[static_cast<size_t>(e.id - 1)], z);
        } catch (const std::exception& ex) {
            row = {e.id, e.name, false, std::string("exception: ") + ex.what()};
        }
        out.all_pass = out.all_pass && row.pass;
        out.criteria.push_back(std::move(row));
    }

    csv::Table table;
    table.comments = {"acceptance battery", "seed=" + std::to_string(seed), "size=" + size};
    table.header = {"id", "name", "pass", "detail"};
    for (const auto& r : out.criteria)
        table.add_row({std::to_string(r.id), r.name, r.pass ? "1" : "0", r.detail});
    out.csv_text = table.to_text();
    return out;
}

SuiteResult run_suite(uint64_t seed, const std::string& size) {
    BatteryResult one = run_battery(seed, size, 1);
    BatteryResult four = run_battery(seed, size, 4);
    bool identical = one.csv_text == four.csv_text;

    SuiteResult out;
    out.criteria = four.criteria;
    out.criteria.push_back({13, "determinism", identical,
                            std::string("thread_caps_1_vs_4=") +
                                (identical ? "byte_identical" : "divergent") +
                                " bytes=" + std::to_string(four.csv_text.size())});
    out.all_pass = true;
    for (const auto& r : out.criteria) out.all_pass = out.all_pass && r.pass;

    csv::Table table;
    table.comments = {"acceptance suite", "seed=" + std::to_string(seed), "size=" + size};
    table.header = {"id", "name", "pass", "detail"};
    for (const auto& r : out.criteria)
        table.add_row({std::to_string(r.id), r.name, r.pass ? "1" : "0", r.detail});
    out.summary_csv = table.to_text();
    return out;
}

}  // namespace weightlab::suite
