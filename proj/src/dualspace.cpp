#include "weightlab/dualspace.hpp"

#include <cmath>

#include "weightlab/rng.hpp"

namespace weightlab::dualspace {

double pairing(std::span<const double> f, std::span<const double> g, const MixedSpace& space) {
    if (static_cast<int64_t>(f.size()) != space.dim() ||
        static_cast<int64_t>(g.size()) != space.dim())
        throw std::invalid_argument("pairing arguments must match the space dimension");
    std::vector<double> mu = space.flat_masses();
    double acc = 0.0;
    for (size_t i = 0; i < mu.size(); ++i) acc += mu[i] * f[i] * g[i];
    return acc;
}

NormingWitness norming_function(std::span<const double> g, const MixedSpace& space) {
    const int n = space.rank();
    const int64_t d = space.dim();
    if (static_cast<int64_t>(g.size()) != d)
        throw std::invalid_argument("norming argument must match the space dimension");

    NormingWitness w;
    w.g.assign(g.begin(), g.end());
    if (n == 0) {
        w.f.assign(1, g[0] > 0.0 ? 1.0 : (g[0] < 0.0 ? -1.0 : 0.0));
        w.pairing_value = std::fabs(g[0]);
        w.f_norm = std::fabs(w.f[0]);
        w.g_dual_norm = std::fabs(g[0]);
        return w;
    }

    std::vector<double> qd(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) qd[static_cast<size_t>(i)] = conjugate_exponent(space.q[static_cast<size_t>(i)]);

    // Conjugate tail norms: tails[i] has one entry per prefix (s_1..s_i);
    // tails[n] = |g|, tails[0] = {||g||_dual}.
    std::vector<std::vector<double>> tails(static_cast<size_t>(n + 1));
    tails[static_cast<size_t>(n)].resize(static_cast<size_t>(d));
    for (int64_t i = 0; i < d; ++i)
        tails[static_cast<size_t>(n)][static_cast<size_t>(i)] = std::fabs(g[static_cast<size_t>(i)]);
    for (int level = n; level >= 1; --level) {
        const auto& axis = space.axes[static_cast<size_t>(level - 1)];
        const double qe = qd[static_cast<size_t>(level - 1)];
        const auto& in = tails[static_cast<size_t>(level)];
        int inner = axis.size();
        int64_t groups = static_cast<int64_t>(in.size()) / inner;
        auto& out = tails[static_cast<size_t>(level - 1)];
        out.resize(static_cast<size_t>(groups));
        for (int64_t gidx = 0; gidx < groups; ++gidx) {
            double acc = 0.0;
            for (int j = 0; j < inner; ++j)
                acc += axis.masses[static_cast<size_t>(j)] *
                       std::pow(in[static_cast<size_t>(gidx * inner + j)], qe);
            out[static_cast<size_t>(gidx)] = std::pow(acc, 1.0 / qe);
        }
    }

    // Suffix sizes: suffix[i] = prod of axis sizes i..n-1, so the level-i
    // prefix of a flat index is flat / suffix[i].
    std::vector<int64_t> suffix(static_cast<size_t>(n + 1), 1);
    for (int i = n - 1; i >= 0; --i)
        suffix[static_cast<size_t>(i)] =
            suffix[static_cast<size_t>(i + 1)] * space.axes[static_cast<size_t>(i)].size();

    w.f.assign(static_cast<size_t>(d), 0.0);
    for (int64_t idx = 0; idx < d; ++idx) {
        double gv = g[static_cast<size_t>(idx)];
        if (gv == 0.0) continue;  // zero fiber: 0 * inf convention
        double val = std::pow(std::fabs(gv), qd[static_cast<size_t>(n - 1)] - 1.0);
        for (int i = 2; i <= n; ++i) {
            int64_t prefix = idx / suffix[static_cast<size_t>(i - 1)];
            double tail = tails[static_cast<size_t>(i - 1)][static_cast<size_t>(prefix)];
            val *= std::pow(tail, qd[static_cast<size_t>(i - 2)] - qd[static_cast<size_t>(i - 1)]);
        }
        w.f[static_cast<size_t>(idx)] = (gv > 0.0 ? val : -val);
    }

    w.pairing_value = pairing(w.f, g, space);
    w.f_norm = mixed_norm_flat(w.f, space);
    w.g_dual_norm = tails[0][0];
    return w;
}

DualityReport verify_duality_pairing(std::span<const double> g, const MixedSpace& space,
                                     int trials, uint64_t seed) {
    NormingWitness w = norming_function(g, space);
    DualityReport report;
    report.witness_value = w.g_dual_norm;
    Rng base(seed);
    for (int t = 0; t < trials; ++t) {
        Rng rng = base.fork(static_cast<uint64_t>(t));
        std::vector<double> f(static_cast<size_t>(space.dim()));
        for (double& x : f) x = rng.normal();
        double fn = mixed_norm_flat(f, space);
        if (!(fn > 0.0)) continue;
        double ratio = std::fabs(pairing(f, g, space)) / fn;
        if (ratio > report.sampled_max) report.sampled_max = ratio;
        if (ratio > w.g_dual_norm * (1.0 + 1e-9)) report.holder_ok = false;
    }
    report.gap = report.witness_value - report.sampled_max;
    return report;
}

TupleDualityReport tuple_duality_constants(const MixedSpace& space, int tuple_size, double r,
                                           int trials, uint64_t seed) {
    if (tuple_size < 1) throw std::invalid_argument("tuple size must be >= 1");
    check_s_exponent(r);
    if (r == kInf) throw std::invalid_argument("the comparison exponent r must be finite");
    const int64_t d = space.dim();
    const double up_1_r = std::pow(static_cast<double>(tuple_size), 1.0 - 1.0 / r);
    const double up_r_inf = std::pow(static_cast<double>(tuple_size), 1.0 / r);

    TupleDualityReport report;
    report.identical_expected_1_r = up_1_r;
    report.identical_expected_r_inf = up_r_inf;
    report.worst_slack = kInf;

    Rng base(seed);
    auto check = [&](double lhs, double rhs) {
        // lhs <= rhs expected; track the tightest relative margin.
        double margin = (rhs - lhs) / (rhs > 0.0 ? rhs : 1.0);
        if (margin < report.worst_slack) report.worst_slack = margin;
        if (lhs > rhs * (1.0 + 1e-9)) report.chain_ok = false;
    };
    for (int t = 0; t < trials; ++t) {
        Rng rng = base.fork(static_cast<uint64_t>(t));
        std::vector<std::vector<double>> fs(static_cast<size_t>(tuple_size));
        for (auto& f : fs) {
            f.resize(static_cast<size_t>(d));
            for (double& x : f) x = rng.normal();
        }
        double t1 = tuple_norm_flat(fs, 1.0, space);
        double tr = tuple_norm_flat(fs, r, space);
        double ti = tuple_norm_flat(fs, kInf, space);
        check(tr, t1);
        check(t1, up_1_r * tr);
        check(ti, tr);
        check(tr, up_r_inf * ti);
    }

    {
        Rng rng = base.fork(0xabcdef);
        std::vector<double> f(static_cast<size_t>(d));
        for (double& x : f) x = 0.25 + rng.uniform();
        std::vector<std::vector<double>> fs(static_cast<size_t>(tuple_size), f);
        double t1 = tuple_norm_flat(fs, 1.0, space);
        double tr = tuple_norm_flat(fs, r, space);
        double ti = tuple_norm_flat(fs, kInf, space);
        report.identical_ratio_1_r = t1 / tr;
        report.identical_ratio_r_inf = tr / ti;
    }
    {
        std::vector<std::vector<double>> fs(static_cast<size_t>(tuple_size));
        for (int j = 0; j < tuple_size; ++j) {
            fs[static_cast<size_t>(j)].assign(static_cast<size_t>(d), 0.0);
            for (int64_t i = j; i < d; i += tuple_size) fs[static_cast<size_t>(j)][static_cast<size_t>(i)] = 1.0;
        }
        double tr = tuple_norm_flat(fs, r, space);
        double ti = tuple_norm_flat(fs, kInf, space);
        report.disjoint_ratio_r_inf = ti > 0.0 ? tr / ti : 0.0;
    }
    return report;
}

}  // namespace weightlab::dualspace
