#include "weightlab/maximal.hpp"

#include <cmath>

#include "weightlab/parallel.hpp"
#include "weightlab/rng.hpp"

namespace weightlab::maximal {

namespace {

void maximal_core(std::span<const double> f, std::span<double> out) {
    const int n = static_cast<int>(f.size());
    std::vector<double> absf(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) absf[static_cast<size_t>(i)] = std::fabs(f[static_cast<size_t>(i)]);
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = 0.0;
    std::vector<double> tail(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) {
        // avg(a, b) for all b, then suffix maxima: tail[i] = max_{b >= i} avg(a, b),
        // which is exactly max over intervals [a, b] containing cell i.
        double sum = 0.0;
        for (int b = a; b < n; ++b) {
            sum += absf[static_cast<size_t>(b)];
            tail[static_cast<size_t>(b)] = sum / static_cast<double>(b - a + 1);
        }
        for (int i = n - 2; i >= a; --i)
            if (tail[static_cast<size_t>(i + 1)] > tail[static_cast<size_t>(i)])
                tail[static_cast<size_t>(i)] = tail[static_cast<size_t>(i + 1)];
        for (int i = a; i < n; ++i)
            if (tail[static_cast<size_t>(i)] > out[static_cast<size_t>(i)])
                out[static_cast<size_t>(i)] = tail[static_cast<size_t>(i)];
    }
}

}  // namespace

GridFunction maximal_function(const GridFunction& f) {
    std::vector<double> out(static_cast<size_t>(f.grid.n));
    maximal_core(f.v, out);
    return GridFunction(f.grid, std::move(out));
}

IntervalWitness maximal_witness(const GridFunction& f, int cell) {
    const int n = f.grid.n;
    if (cell < 0 || cell >= n) throw std::invalid_argument("witness cell out of range");
    IntervalWitness best{cell, cell, -1.0};
    for (int len = 1; len <= n; ++len) {
        for (int a = std::max(0, cell - len + 1); a + len - 1 < n && a <= cell; ++a) {
            int b = a + len - 1;
            if (b < cell) continue;
            double sum = 0.0;
            for (int j = a; j <= b; ++j) sum += std::fabs(f.v[static_cast<size_t>(j)]);
            double avg = sum / static_cast<double>(len);
            if (avg > best.average) best = IntervalWitness{a, b, avg};
        }
    }
    return best;
}

LatticeFunction lattice_maximal(const LatticeFunction& f) {
    const int n = f.grid.n;
    const int64_t d = f.fiber_dim();
    LatticeFunction out = f;
    std::vector<double> col(static_cast<size_t>(n)), res(static_cast<size_t>(n));
    for (int64_t j = 0; j < d; ++j) {
        for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] = f.v[static_cast<size_t>(i * d + j)];
        maximal_core(col, res);
        for (int i = 0; i < n; ++i) out.v[static_cast<size_t>(i * d + j)] = res[static_cast<size_t>(i)];
    }
    return out;
}

namespace {

double ratio_for(const GridFunction& f, double p, const Weight& w) {
    double den = weighted_lp_norm(f, p, w);
    if (!(den > 0.0)) return 0.0;
    return weighted_lp_norm(maximal_function(f), p, w) / den;
}

GridFunction random_candidate(const Grid1D& grid, const Weight& w, double p, Rng& rng) {
    const int n = grid.n;
    std::vector<double> v(static_cast<size_t>(n), 0.0);
    switch (rng.uniform_int(4)) {
        case 0: {  // isolated spikes
            int k = 1 + rng.uniform_int(3);
            for (int j = 0; j < k; ++j)
                v[static_cast<size_t>(rng.uniform_int(n))] += std::exp(rng.uniform(0.0, 3.0));
            break;
        }
        case 1: {  // indicator block
            int a = rng.uniform_int(n);
            int len = 1 + rng.uniform_int(n - a);
            for (int j = a; j < a + len; ++j) v[static_cast<size_t>(j)] = 1.0;
            break;
        }
        case 2: {  // dual-weight bump, clipped to a block
            int a = rng.uniform_int(n);
            int len = 1 + rng.uniform_int(n - a);
            double t = 1.0 / (p - 1.0);
            for (int j = a; j < a + len; ++j)
                v[static_cast<size_t>(j)] = std::pow(w.fn.v[static_cast<size_t>(j)], -t);
            break;
        }
        default: {  // rough positive noise
            for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] = std::fabs(rng.normal());
            break;
        }
    }
    return GridFunction(grid, std::move(v));
}

}  // namespace

MaximalNormEstimate maximal_norm_lower(double p, const Weight& w, int trials, uint64_t seed) {
    check_exponent(p, "p");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const Grid1D grid = w.fn.grid;
    GridFunction best_f(grid, std::vector<double>(static_cast<size_t>(grid.n), 1.0));
    double best = ratio_for(best_f, p, w);  // constant function: ratio 1 exactly

    struct TrialResult {
        double ratio = -1.0;
        GridFunction f;
    };
    std::vector<TrialResult> results(static_cast<size_t>(trials));
    Rng base(seed);
    std::vector<Rng> streams;
    streams.reserve(static_cast<size_t>(trials));
    for (int t = 0; t < trials; ++t) streams.push_back(base.fork(static_cast<uint64_t>(t)));

    parallel_for(trials, [&](int64_t t) {
        Rng rng = streams[static_cast<size_t>(t)];
        GridFunction f = random_candidate(grid, w, p, rng);
        double r = ratio_for(f, p, w);
        const int climbs = 80;
        for (int c = 0; c < climbs; ++c) {
            int cell = rng.uniform_int(grid.n);
            double old = f.v[static_cast<size_t>(cell)];
            double proposal;
            switch (rng.uniform_int(4)) {
                case 0: proposal = old * 2.0; break;
                case 1: proposal = old * 0.5; break;
                case 2: proposal = old + std::exp(rng.uniform(-1.0, 2.0)); break;
                default: proposal = 0.0; break;
            }
            f.v[static_cast<size_t>(cell)] = proposal;
            double r2 = ratio_for(f, p, w);
            if (r2 > r)
                r = r2;
            else
                f.v[static_cast<size_t>(cell)] = old;
        }
        results[static_cast<size_t>(t)] = TrialResult{r, std::move(f)};
    });

    for (auto& res : results)
        if (res.ratio > best) {
            best = res.ratio;
            best_f = std::move(res.f);
        }
    return MaximalNormEstimate{p, w, best, std::move(best_f), trials, seed};
}

}  // namespace weightlab::maximal
