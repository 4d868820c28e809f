#include "weightlab/weights.hpp"

#include <algorithm>
#include <cmath>

#include "weightlab/parallel.hpp"

namespace weightlab::weights {

namespace {

std::vector<double> prefix_sums(const std::vector<double>& v) {
    std::vector<double> p(v.size() + 1, 0.0);
    for (size_t i = 0; i < v.size(); ++i) p[i + 1] = p[i] + v[i];
    return p;
}

}  // namespace

ApReport ap_constant(const Weight& w, double p) {
    check_exponent(p, "p");
    const int n = w.fn.grid.n;
    const double t = 1.0 / (p - 1.0);
    std::vector<double> inv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i)] = std::pow(w.fn.v[static_cast<size_t>(i)], -t);
    const auto pw = prefix_sums(w.fn.v);
    const auto pd = prefix_sums(inv);

    struct Best {
        double value = -1.0;
        int a = 0, b = 0;
    };
    std::vector<Best> per_start(static_cast<size_t>(n));
    parallel_for(n, [&](int64_t a) {
        Best best;
        for (int b = static_cast<int>(a); b < n; ++b) {
            double len = static_cast<double>(b - a + 1);
            double avg_w = (pw[static_cast<size_t>(b + 1)] - pw[static_cast<size_t>(a)]) / len;
            double avg_d = (pd[static_cast<size_t>(b + 1)] - pd[static_cast<size_t>(a)]) / len;
            double val = avg_w * std::pow(avg_d, p - 1.0);
            if (val > best.value) best = Best{val, static_cast<int>(a), b};
        }
        per_start[static_cast<size_t>(a)] = best;
    });
    Best global;
    for (const Best& b : per_start)
        if (b.value > global.value) global = b;
    return ApReport{p, global.value, global.a, global.b};
}

Weight dual_weight(const Weight& w, double p) {
    check_exponent(p, "p");
    std::vector<double> out(w.fn.v.size());
    double t = 1.0 / (p - 1.0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = std::pow(w.fn.v[i], -t);
    return make_weight(GridFunction(w.fn.grid, std::move(out)));
}

namespace {

// integral of x^a over [l, r] with 0 <= l < r.
double power_integral_positive(double a, double l, double r) {
    if (a == -1.0) {
        if (l <= 0.0) throw std::invalid_argument("power weight a = -1 diverges at the origin");
        return std::log(r / l);
    }
    if (a < -1.0 && l <= 0.0)
        throw std::invalid_argument("power weight diverges on a cell touching the origin");
    return (std::pow(r, a + 1.0) - std::pow(l, a + 1.0)) / (a + 1.0);
}

}  // namespace

Weight power_weight(double a, const Grid1D& grid) {
    std::vector<double> out(static_cast<size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        double l = grid.cell_left(i), r = grid.cell_right(i);
        double integral;
        if (a == 0.0) {
            integral = r - l;
        } else if (l >= 0.0) {
            integral = power_integral_positive(a, l, r);
        } else if (r <= 0.0) {
            integral = power_integral_positive(a, -r, -l);
        } else {
            if (a <= -1.0)
                throw std::invalid_argument("power weight diverges on a cell containing the origin");
            integral = power_integral_positive(a, 0.0, -l) + power_integral_positive(a, 0.0, r);
        }
        double avg = integral / grid.h;
        if (!(avg > 0.0)) throw std::invalid_argument("power weight produced a nonpositive cell");
        out[static_cast<size_t>(i)] = avg;
    }
    return make_weight(GridFunction(grid, std::move(out)));
}

double openness_exponent(const Weight& w, double p, double budget) {
    check_exponent(p, "p");
    double base = ap_constant(w, p).constant;
    if (budget < base * (1.0 - 1e-12))
        throw std::invalid_argument("openness budget is below [w]_{A_p}");
    const double step = 1e-3;
    // Largest admissible index: sigma = 1 + k*step with p/sigma >= kExponentMin.
    int k_hi = static_cast<int>(std::floor((p / kExponentMin - 1.0) / step + 1e-9));
    if (k_hi < 1)
        throw std::invalid_argument("no admissible sigma: p is too close to the exponent floor");
    auto feasible = [&](int k) {
        double sigma = 1.0 + k * step;
        return ap_constant(w, p / sigma).constant <= budget * (1.0 + 1e-12);
    };
    if (!feasible(1))
        throw std::invalid_argument(
            "openness search infeasible at the smallest step; the budget only admits sigma -> 1 "
            "on this grid");
    int lo = 1, hi = k_hi;  // lo always feasible
    if (feasible(hi)) return 1.0 + hi * step;
    while (hi - lo > 1) {
        int mid = lo + (hi - lo) / 2;
        (feasible(mid) ? lo : hi) = mid;
    }
    return 1.0 + lo * step;
}

double ConsistencyProfile::eval(double at) const {
    // Last abscissa <= at; clamps to the ends outside the sampled range.
    auto it = std::upper_bound(x.begin(), x.end(), at);
    if (it == x.begin()) return y.front();
    return y[static_cast<size_t>(std::distance(x.begin(), it) - 1)];
}

ConsistencyProfile fit_consistency_profile(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("consistency profile needs at least two samples");
    std::sort(samples.begin(), samples.end());
    ConsistencyProfile prof;
    for (const auto& [sx, sy] : samples) {
        if (!prof.x.empty() && prof.x.back() == sx)
            prof.y.back() = std::max(prof.y.back(), sy);  // duplicate abscissa: keep max
        else {
            prof.x.push_back(sx);
            prof.y.push_back(sy);
        }
    }
    for (size_t i = 1; i < prof.y.size(); ++i)
        prof.y[i] = std::max(prof.y[i], prof.y[i - 1]);  // cumulative max = least majorant
    return prof;
}

}  // namespace weightlab::weights
