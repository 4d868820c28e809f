#include "weightlab/intops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "weightlab/maximal.hpp"
#include "weightlab/rng.hpp"

namespace weightlab::intops {

using sbound::Matrix;

EvolutionFamily identity_family(MixedSpace state_space, int time_cells) {
    if (time_cells < 1) throw std::invalid_argument("need at least one time cell");
    const int d = static_cast<int>(state_space.dim());
    EvolutionFamily fam;
    fam.evaluator = [d](int, int) { return Matrix::identity(d); };
    fam.causal = false;
    fam.label = "identity";
    fam.uniform_bound = 1.0;
    fam.time_cells = time_cells;
    fam.state_space = std::move(state_space);
    return fam;
}

EvolutionFamily multiplication_evolution_family(MixedSpace state_space, int time_cells,
                                                std::vector<double> m, std::string label) {
    if (time_cells < 1) throw std::invalid_argument("need at least one time cell");
    if (static_cast<int64_t>(m.size()) != state_space.dim())
        throw std::invalid_argument("multiplier dimension mismatch");
    double peak = 0.0;
    for (double x : m) peak = std::max(peak, std::fabs(x));
    EvolutionFamily fam;
    fam.evaluator = [mat = Matrix::diagonal(m)](int, int) { return mat; };
    fam.causal = false;
    fam.label = std::move(label);
    fam.uniform_bound = peak;  // exact on every L^q: diagonal action
    fam.time_cells = time_cells;
    fam.state_space = std::move(state_space);
    return fam;
}

EvolutionFamily heat_evolution_family(const Grid1D& space_grid, double q, double scale,
                                      int time_cells, bool periodic) {
    check_exponent(q);
    if (!(scale > 0.0)) throw std::invalid_argument("diffusion scale must be positive");
    if (time_cells < 1) throw std::invalid_argument("need at least one time cell");
    const int n = space_grid.n;
    const double h = space_grid.h;

    auto lags = std::make_shared<std::vector<Matrix>>();
    lags->reserve(static_cast<size_t>(time_cells));
    lags->push_back(Matrix::identity(n));
    double min_row_mass = 1.0;
    for (int lag = 1; lag < time_cells; ++lag) {
        const double tau = lag * scale;
        Matrix g(n, n);
        if (periodic) {
            // Circulant spectral form of exp(tau L), L the periodic
            // second-difference generator: entries depend on (i - j) mod n.
            std::vector<double> c(static_cast<size_t>(n), 0.0);
            for (int k = 0; k < n; ++k) {
                const double sk = std::sin(std::numbers::pi * k / n);
                const double ev = std::exp(-tau * 4.0 / (h * h) * sk * sk);
                for (int d = 0; d < n; ++d)
                    c[static_cast<size_t>(d)] +=
                        ev * std::cos(2.0 * std::numbers::pi * k * d / n) / n;
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) g.at(i, j) = c[static_cast<size_t>(((i - j) % n + n) % n)];
        } else {
            std::vector<double> gd(static_cast<size_t>(n));
            for (int d = 0; d < n; ++d) gd[static_cast<size_t>(d)] = std::exp(-(d * h) * (d * h) / (4.0 * tau));
            double z = gd[0];
            for (int d = 1; d < n; ++d) z += 2.0 * gd[static_cast<size_t>(d)];
            for (int i = 0; i < n; ++i) {
                double row = 0.0;
                for (int j = 0; j < n; ++j) {
                    g.at(i, j) = gd[static_cast<size_t>(std::abs(i - j))] / z;
                    row += g.at(i, j);
                }
                min_row_mass = std::min(min_row_mass, row);
            }
        }
        lags->push_back(std::move(g));
    }

    EvolutionFamily fam;
    fam.evaluator = [lags, n](int t, int s) {
        if (t < s) return Matrix(n, n);
        return (*lags)[static_cast<size_t>(t - s)];
    };
    fam.causal = true;
    fam.label = periodic ? "heat-periodic" : "heat-padded";
    fam.uniform_bound = 1.0;  // stochastic (or sub-stochastic) symmetric rows
    fam.boundary_loss = periodic ? 0.0 : 1.0 - min_row_mass;
    fam.time_cells = time_cells;
    fam.state_space = MixedSpace(
        {MeasuredAxis(std::vector<double>(static_cast<size_t>(n), h))}, {q});
    return fam;
}

IntegralOperator make_integral_operator(kernels::Kernel k, EvolutionFamily family,
                                        const Grid1D& time_grid) {
    if (family.time_cells != time_grid.n)
        throw std::invalid_argument("family and time grid disagree on the cell count");
    if (k.h != time_grid.h)
        throw std::invalid_argument("kernel and time grid disagree on the cell width");
    return IntegralOperator{std::move(k), std::move(family), time_grid};
}

LatticeFunction apply_integral_operator(const IntegralOperator& op, const LatticeFunction& f) {
    if (!(f.grid == op.time_grid)) throw std::invalid_argument("input grid mismatch");
    if (!(f.space == op.family.state_space)) throw std::invalid_argument("input fiber mismatch");
    const int nt = op.time_grid.n;
    const int d = static_cast<int>(op.family.state_space.dim());
    const double h = op.time_grid.h;
    LatticeFunction out{op.time_grid, op.family.state_space,
                        std::vector<double>(static_cast<size_t>(nt) * d, 0.0)};
    std::vector<double> tmp(static_cast<size_t>(d));
    for (int t = 0; t < nt; ++t) {
        auto acc = out.fiber(t);
        const int s_hi = op.family.causal ? t : nt - 1;
        for (int s = 0; s <= s_hi; ++s) {
            const int off = t - s;
            if (std::abs(off) > op.kernel.radius) continue;
            const double coeff = h * op.kernel.at_offset(off);
            if (coeff == 0.0) continue;
            op.family.evaluator(t, s).apply(f.fiber(s), tmp);
            for (int i = 0; i < d; ++i) acc[static_cast<size_t>(i)] += coeff * tmp[static_cast<size_t>(i)];
        }
    }
    return out;
}

Matrix assemble_matrix(const IntegralOperator& op) {
    const int nt = op.time_grid.n;
    const int d = static_cast<int>(op.family.state_space.dim());
    const double h = op.time_grid.h;
    Matrix big(nt * d, nt * d);
    for (int t = 0; t < nt; ++t) {
        const int s_hi = op.family.causal ? t : nt - 1;
        for (int s = 0; s <= s_hi; ++s) {
            const int off = t - s;
            if (std::abs(off) > op.kernel.radius) continue;
            const double coeff = h * op.kernel.at_offset(off);
            if (coeff == 0.0) continue;
            const Matrix block = op.family.evaluator(t, s);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    big.at(t * d + i, s * d + j) = coeff * block.at(i, j);
        }
    }
    return big;
}

MixedSpace lattice_space(const Grid1D& time_grid, const Weight& v, double p,
                         const MixedSpace& state_space) {
    check_exponent(p);
    if (!(v.fn.grid == time_grid)) throw std::invalid_argument("weight grid mismatch");
    std::vector<double> masses(v.fn.v.size());
    for (size_t i = 0; i < masses.size(); ++i) masses[i] = time_grid.h * v.fn.v[i];
    std::vector<MeasuredAxis> axes{MeasuredAxis(std::move(masses))};
    std::vector<double> qs{p};
    axes.insert(axes.end(), state_space.axes.begin(), state_space.axes.end());
    qs.insert(qs.end(), state_space.q.begin(), state_space.q.end());
    return MixedSpace(std::move(axes), std::move(qs));
}

UniformBoundReport uniform_bound_check(const IntegralOperator& op, double p, const Weight& v,
                                       int trials, uint64_t seed, bool rescale) {
    check_exponent(p);
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    IntegralOperator scaled = op;
    if (op.family.uniform_bound > 1.0 + 1e-12) {
        if (!rescale)
            throw std::invalid_argument("family bound exceeds 1; rescale before the check");
        const double factor = 1.0 / op.family.uniform_bound;
        scaled.family.evaluator = [ev = op.family.evaluator, factor](int t, int s) {
            Matrix m = ev(t, s);
            for (double& x : m.a) x *= factor;
            return m;
        };
        scaled.family.uniform_bound = 1.0;
    }

    kernels::Kernel kabs = scaled.kernel;
    for (double& x : kabs.v) x = std::fabs(x);

    const int nt = scaled.time_grid.n;
    const int d = static_cast<int>(scaled.family.state_space.dim());
    UniformBoundReport rep;
    rep.worst_pointwise_a = rep.worst_pointwise_b = rep.worst_norm_slack = -kInf;
    double scale_a = 1.0, scale_b = 1.0, scale_n = 1.0;

    Rng root(seed);
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.fork(static_cast<uint64_t>(trial));
        LatticeFunction f{scaled.time_grid, scaled.family.state_space,
                          std::vector<double>(static_cast<size_t>(nt) * d, 0.0)};
        if (trial == 0) {
            std::fill(f.v.begin(), f.v.end(), 1.0);
        } else if (trial == 1) {
            auto fib = f.fiber(nt / 2);
            for (auto& x : fib) x = 1.0 + rng.uniform();
        } else {
            for (double& x : f.v) x = rng.normal();
        }
        const LatticeFunction out = apply_integral_operator(scaled, f);
        const GridFunction g = fiber_norms(f);
        const GridFunction conv = kernels::convolve(kabs, g);
        const GridFunction mg = maximal::maximal_function(g);
        const GridFunction out_norms = fiber_norms(out);
        for (int t = 0; t < nt; ++t) {
            rep.worst_pointwise_a = std::max(rep.worst_pointwise_a, out_norms.v[static_cast<size_t>(t)] - conv.v[static_cast<size_t>(t)]);
            rep.worst_pointwise_b = std::max(rep.worst_pointwise_b, conv.v[static_cast<size_t>(t)] - mg.v[static_cast<size_t>(t)]);
            scale_a = std::max(scale_a, conv.v[static_cast<size_t>(t)]);
            scale_b = std::max(scale_b, mg.v[static_cast<size_t>(t)]);
        }
        const double lhs = weighted_lp_norm(out_norms, p, v);
        const double rhs = weighted_lp_norm(mg, p, v);
        rep.worst_norm_slack = std::max(rep.worst_norm_slack, lhs - rhs);
        scale_n = std::max(scale_n, rhs);
    }
    rep.trials = trials;
    rep.pass = rep.worst_pointwise_a <= 1e-9 * scale_a && rep.worst_pointwise_b <= 1e-9 * scale_b &&
               rep.worst_norm_slack <= 1e-9 * scale_n;
    return rep;
}

Matrix extend_restrict(const Matrix& T, std::span<const int> subcells, int full_dim) {
    if (T.rows != T.cols || T.rows != static_cast<int>(subcells.size()))
        throw std::invalid_argument("operator shape must match the subdomain size");
    for (size_t i = 0; i < subcells.size(); ++i) {
        if (subcells[i] < 0 || subcells[i] >= full_dim)
            throw std::invalid_argument("subdomain cell out of range");
        if (i > 0 && subcells[i] <= subcells[i - 1])
            throw std::invalid_argument("subdomain cells must be strictly increasing");
    }
    Matrix big(full_dim, full_dim);
    for (int a = 0; a < T.rows; ++a)
        for (int b = 0; b < T.cols; ++b)
            big.at(subcells[static_cast<size_t>(a)], subcells[static_cast<size_t>(b)]) = T.at(a, b);
    return big;
}

EvolutionFamily extend_restrict(const EvolutionFamily& fam, std::vector<int> subcells,
                                MixedSpace full_space) {
    const int full_dim = static_cast<int>(full_space.dim());
    if (static_cast<int64_t>(subcells.size()) != fam.state_space.dim())
        throw std::invalid_argument("subdomain size must match the family's state space");
    const std::vector<double> full_mu = full_space.flat_masses();
    const std::vector<double> sub_mu = fam.state_space.flat_masses();
    for (size_t i = 0; i < subcells.size(); ++i) {
        if (subcells[i] < 0 || subcells[i] >= full_dim)
            throw std::invalid_argument("subdomain cell out of range");
        if (i > 0 && subcells[i] <= subcells[i - 1])
            throw std::invalid_argument("subdomain cells must be strictly increasing");
        if (full_mu[static_cast<size_t>(subcells[i])] != sub_mu[i])
            throw std::invalid_argument("subdomain masses disagree with the full space");
    }
    EvolutionFamily out;
    out.evaluator = [ev = fam.evaluator, cells = std::move(subcells), full_dim](int t, int s) {
        return extend_restrict(ev(t, s), cells, full_dim);
    };
    out.causal = fam.causal;
    out.label = fam.label + "-extended";
    out.uniform_bound = fam.uniform_bound;  // E and R are norm-1 on matching masses
    out.boundary_loss = fam.boundary_loss;
    out.time_cells = fam.time_cells;
    out.state_space = std::move(full_space);
    return out;
}

// ---------------------------------------------------------------------------
// Experiment driver.
// ---------------------------------------------------------------------------

namespace {

double clamp_exponent(double e) { return std::clamp(e, kExponentMin, kExponentMax); }

const char* membership_name(kernels::Membership m) {
    switch (m) {
        case kernels::Membership::certified: return "certified";
        case kernels::Membership::refuted: return "refuted";
        case kernels::Membership::undetermined: return "undetermined";
    }
    return "?";
}

}  // namespace

ExperimentReport theorem_experiment(const ExperimentConfig& cfg) {
    check_exponent(cfg.p);
    check_exponent(cfg.q);
    if (cfg.s_list.empty()) throw std::invalid_argument("need at least one s");
    for (double s : cfg.s_list) check_s_exponent(s);
    if (cfg.weight_powers.empty()) throw std::invalid_argument("need at least one weight");
    if (cfg.kernel_names.empty()) throw std::invalid_argument("need at least one kernel name");

    Rng root(cfg.seed);
    ExperimentReport rep;

    // Kernel catalogue, keeping only certified members for the operators.
    std::vector<kernels::Kernel> certified;
    std::vector<std::string> certified_names;
    for (size_t i = 0; i < cfg.kernel_names.size(); ++i) {
        const kernels::Kernel k = kernels::catalog(cfg.kernel_names[i], cfg.kernel_params, cfg.time_grid);
        const auto verdict = kernels::in_class_k(k, 64, root.fork(0x100 + i).next());
        rep.kernel_verdicts.push_back(cfg.kernel_names[i] + ":" +
                                      membership_name(verdict.status));
        if (verdict.status == kernels::Membership::certified) {
            certified.push_back(k);
            certified_names.push_back(cfg.kernel_names[i]);
        }
    }
    if (certified.empty())
        throw std::invalid_argument("no certified kernels in the requested subset");

    const Grid1D space_grid{0.0, cfg.space_h, cfg.space_cells};
    const MixedSpace state_space(
        {MeasuredAxis(std::vector<double>(static_cast<size_t>(cfg.space_cells), cfg.space_h))},
        {cfg.q});

    // Evolution members. Multiplication members additionally get an exact
    // tagged family on the state space for the structured certificate.
    std::vector<EvolutionFamily> evolution_members;
    std::vector<Matrix> state_multipliers;
    if (cfg.family == "heat") {
        evolution_members.push_back(
            heat_evolution_family(space_grid, cfg.q, cfg.diffusion_scale, cfg.time_grid.n, true));
    } else if (cfg.family == "identity") {
        evolution_members.push_back(identity_family(state_space, cfg.time_grid.n));
    } else if (cfg.family == "multiplication") {
        for (int j = 0; j < cfg.multiplication_members; ++j) {
            Rng rng = root.fork(0x200 + static_cast<uint64_t>(j));
            std::vector<double> m(static_cast<size_t>(state_space.dim()));
            for (double& x : m) x = 0.25 + rng.uniform();
            state_multipliers.push_back(Matrix::diagonal(m));
            evolution_members.push_back(multiplication_evolution_family(
                state_space, cfg.time_grid.n, std::move(m), "mult" + std::to_string(j)));
        }
    } else {
        throw std::invalid_argument("unknown evolution family: " + cfg.family);
    }

    // Integral-operator member matrices (weight independent).
    std::vector<Matrix> members;
    if (cfg.member_mode == "kernels") {
        for (size_t i = 0; i < certified.size(); ++i) {
            rep.member_labels.push_back("I[" + certified_names[i] + "]");
            members.push_back(assemble_matrix(
                make_integral_operator(certified[i], evolution_members.front(), cfg.time_grid)));
        }
    } else if (cfg.member_mode == "evolution") {
        for (const EvolutionFamily& T : evolution_members) {
            rep.member_labels.push_back("I[" + certified_names.front() + "," + T.label + "]");
            members.push_back(
                assemble_matrix(make_integral_operator(certified.front(), T, cfg.time_grid)));
        }
    } else {
        throw std::invalid_argument("unknown member mode: " + cfg.member_mode);
    }

    std::optional<sbound::OperatorFamily> state_family;
    if (!state_multipliers.empty() && cfg.member_mode == "evolution")
        state_family = sbound::make_family(state_space, state_multipliers,
                                           sbound::StructureTag::multiplication);

    std::vector<Weight> vs;
    for (double a : cfg.weight_powers) vs.push_back(weights::power_weight(a, cfg.time_grid));

    // Fitted maximal-norm envelopes per s for the structured certificate:
    // abscissa [v]_{A_{p/s}}, value 4 max(1, ||M||-lower estimate)^{1/s}.
    std::vector<weights::ConsistencyProfile> alpha(cfg.s_list.size());
    if (state_family) {
        for (size_t si = 0; si < cfg.s_list.size(); ++si) {
            const double s = cfg.s_list[si];
            const double pe = clamp_exponent(s == kInf ? kExponentMin : cfg.p / s);
            std::vector<std::pair<double, double>> pts;
            for (size_t vi = 0; vi < vs.size(); ++vi) {
                const double ap = weights::ap_constant(vs[vi], pe).constant;
                const auto est = maximal::maximal_norm_lower(
                    pe, vs[vi], 8, root.fork(0x600 + si * 64 + vi).next());
                const double ex = s == kInf ? 0.0 : 1.0 / s;
                pts.emplace_back(ap, 4.0 * std::pow(std::max(1.0, est.lower_bound), ex));
            }
            alpha[si] = weights::fit_consistency_profile(std::move(pts));
        }
    }

    rep.sandwich_ok = true;
    std::vector<std::pair<double, double>> envelope_pts;
    for (size_t vi = 0; vi < vs.size(); ++vi) {
        const auto fam = sbound::make_family(lattice_space(cfg.time_grid, vs[vi], cfg.p, state_space),
                                             members, sbound::StructureTag::generic,
                                             rep.member_labels);
        for (size_t si = 0; si < cfg.s_list.size(); ++si) {
            const double s = cfg.s_list[si];
            sbound::SearchOptions opts = cfg.search;
            opts.seed = root.fork(0x300 + si * 64 + vi).next();
            const auto est = sbound::estimate_ls_bound(fam, s, opts);
            ExperimentRow row;
            row.s = s;
            row.weight_power = cfg.weight_powers[vi];
            row.ap_constant =
                weights::ap_constant(vs[vi], clamp_exponent(s == kInf ? kExponentMin : cfg.p / s))
                    .constant;
            row.lower = est.lower;
            if (est.upper) {
                row.upper = est.upper->value;
                row.certificate = sbound::certificate_kind_name(est.upper->kind);
            }
            if (state_family) {
                const double r_state = sbound::exact_ls_bound_structured(*state_family, s);
                row.structured_certificate = r_state * alpha[si].eval(row.ap_constant);
                rep.sandwich_ok =
                    rep.sandwich_ok && row.lower <= row.structured_certificate * (1.0 + 1e-9);
            }
            if (si == 0) envelope_pts.emplace_back(row.ap_constant, row.lower);
            rep.rows.push_back(std::move(row));
        }
        if (cfg.rademacher_tuple > 0) {
            sbound::SearchOptions opts = cfg.search;
            opts.n_max = cfg.rademacher_tuple;
            opts.seed = root.fork(0x400 + vi).next();
            RademacherRow rr;
            rr.weight_power = cfg.weight_powers[vi];
            rr.ap_constant = weights::ap_constant(vs[vi], cfg.p).constant;
            rr.value = sbound::rademacher_bound_estimate(fam, opts);
            rep.rademacher.push_back(rr);
        }
    }

    if (!rep.rademacher.empty()) {
        std::vector<std::pair<double, double>> pts;
        for (const RademacherRow& rr : rep.rademacher) pts.emplace_back(rr.ap_constant, rr.value);
        rep.envelope = weights::fit_consistency_profile(std::move(pts));
    } else {
        rep.envelope = weights::fit_consistency_profile(std::move(envelope_pts));
    }

    rep.chain_ok = true;
    if (cfg.chain_trials > 0) {
        std::vector<kernels::Kernel> chain_kernels;
        if (cfg.member_mode == "kernels")
            chain_kernels = certified;
        else
            chain_kernels.push_back(certified.front());
        for (size_t i = 0; i < chain_kernels.size(); ++i) {
            const auto check = uniform_bound_check(
                make_integral_operator(chain_kernels[i],
                                       cfg.member_mode == "kernels" ? evolution_members.front()
                                                                    : evolution_members[i % evolution_members.size()],
                                       cfg.time_grid),
                cfg.p, vs.front(), cfg.chain_trials, root.fork(0x500 + i).next());
            rep.chain_ok = rep.chain_ok && check.pass;
        }
    }

    rep.notes = std::to_string(members.size()) + " members, " + std::to_string(vs.size()) +
                " weights, " + std::to_string(cfg.s_list.size()) + " exponents; seeded battery";
    return rep;
}

}  // namespace weightlab::intops
