#include "weightlab/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "weightlab/maximal.hpp"
#include "weightlab/parallel.hpp"
#include "weightlab/rng.hpp"

namespace weightlab::kernels {

Kernel::Kernel(int radius_, double h_, std::vector<double> values)
    : radius(radius_), h(h_), v(std::move(values)) {
    if (radius < 0) throw std::invalid_argument("kernel radius must be nonnegative");
    if (!(h > 0.0)) throw std::invalid_argument("kernel cell width must be positive");
    if (static_cast<int>(v.size()) != 2 * radius + 1)
        throw std::invalid_argument("kernel needs 2*radius + 1 samples");
}

double Kernel::mass_l1() const {
    double s = 0.0;
    for (double x : v) s += std::fabs(x);
    return h * s;
}

Kernel Kernel::reflected() const {
    std::vector<double> r(v.rbegin(), v.rend());
    return Kernel(radius, h, std::move(r));
}

double MajorantProfile::integral() const {
    double s = 0.0;
    for (size_t j = 1; j < phi.size(); ++j) s += phi[j];
    return h * (phi[0] + 2.0 * s);
}

MajorantProfile least_decreasing_majorant(const Kernel& k) {
    MajorantProfile prof;
    prof.h = k.h;
    prof.phi.assign(static_cast<size_t>(k.radius + 1), 0.0);
    double running = 0.0;
    for (int j = k.radius; j >= 0; --j) {
        running = std::max(running, std::fabs(k.at_offset(j)));
        if (j > 0) running = std::max(running, std::fabs(k.at_offset(-j)));
        prof.phi[static_cast<size_t>(j)] = running;
    }
    return prof;
}

GridFunction convolve(const Kernel& k, const GridFunction& f) {
    if (k.h != f.grid.h)
        throw std::invalid_argument("kernel and function must share the cell width");
    const int n = f.grid.n;
    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        int lo = std::max(-k.radius, i - (n - 1));
        int hi = std::min(k.radius, i);
        for (int o = lo; o <= hi; ++o) acc += k.at_offset(o) * f.v[static_cast<size_t>(i - o)];
        out[static_cast<size_t>(i)] = k.h * acc;
    }
    return GridFunction(f.grid, std::move(out));
}

namespace {

GridFunction abs_kernel_convolve(const Kernel& k, const GridFunction& f) {
    Kernel a = k;
    for (double& x : a.v) x = std::fabs(x);
    return convolve(a, f);
}

// Sparse heavy-tailed nonnegative test function, normalized to max 1.
GridFunction refutation_candidate(const Grid1D& grid, Rng& rng) {
    std::vector<double> v(static_cast<size_t>(grid.n), 0.0);
    int spikes = 1 + rng.uniform_int(5);
    for (int j = 0; j < spikes; ++j)
        v[static_cast<size_t>(rng.uniform_int(grid.n))] += std::pow(1.0 - rng.uniform(), -1.5);
    double m = *std::max_element(v.begin(), v.end());
    if (m > 0.0)
        for (double& x : v) x /= m;
    return GridFunction(grid, std::move(v));
}

}  // namespace

MembershipVerdict in_class_k(const Kernel& k, int refute_trials, uint64_t seed) {
    MembershipVerdict verdict;
    verdict.majorant = least_decreasing_majorant(k);
    verdict.majorant_integral = verdict.majorant.integral();
    verdict.l1_mass = k.mass_l1();

    if (verdict.l1_mass > 1.0 + 1e-12) {
        // f == 1 on a window covering the support: the convolution at the
        // center equals the L^1 mass while Mf == 1 there.
        int n = 2 * k.radius + 1;
        Grid1D grid(-(0.5 * n) * k.h, k.h, n);
        GridFunction f(grid, std::vector<double>(static_cast<size_t>(n), 1.0));
        int center = k.radius;
        verdict.status = Membership::refuted;
        verdict.counterexample = f;
        verdict.violation_cell = center;
        verdict.violation_excess =
            abs_kernel_convolve(k, f).v[static_cast<size_t>(center)] -
            maximal::maximal_function(f).v[static_cast<size_t>(center)];
        return verdict;
    }

    if (verdict.majorant_integral <= 1.0 + 1e-12) {
        verdict.status = Membership::certified;
        return verdict;
    }

    Grid1D grid(0.0, k.h, std::max(33, 4 * k.radius + 9));
    Rng base(seed);
    for (int t = 0; t < refute_trials; ++t) {
        Rng rng = base.fork(static_cast<uint64_t>(t));
        GridFunction f = refutation_candidate(grid, rng);
        GridFunction conv = abs_kernel_convolve(k, f);
        GridFunction mf = maximal::maximal_function(f);
        for (int i = 0; i < grid.n; ++i) {
            double excess = conv.v[static_cast<size_t>(i)] - mf.v[static_cast<size_t>(i)];
            if (excess > 1e-9) {
                verdict.status = Membership::refuted;
                verdict.counterexample = std::move(f);
                verdict.violation_cell = i;
                verdict.violation_excess = excess;
                return verdict;
            }
        }
    }
    verdict.status = Membership::undetermined;
    return verdict;
}

namespace {

Kernel sampled(int radius, double h, const std::vector<double>& raw, double target_mass) {
    double mass = 0.0;
    for (double x : raw) mass += std::fabs(x);
    mass *= h;
    if (!(mass > 0.0)) throw std::invalid_argument("kernel samples have zero mass");
    std::vector<double> scaled(raw);
    for (double& x : scaled) x *= target_mass / mass;
    return Kernel(radius, h, std::move(scaled));
}

}  // namespace

Kernel catalog(const std::string& name, const CatalogParams& params, const Grid1D& grid) {
    const double h = grid.h;
    const int max_radius = std::max(1, grid.n - 1);
    double mass = params.mass.value_or(1.0);
    if (!(mass > 0.0 && mass <= 1.0 + 1e-12))
        throw std::invalid_argument("kernel mass must lie in (0, 1]");

    if (name == "gaussian") {
        if (!(params.t > 0.0)) throw std::invalid_argument("gaussian kernel needs t > 0");
        // e^{-x^2/(4t)} support until the tail is below 1e-18.
        int radius = std::min(max_radius,
                              static_cast<int>(std::ceil(std::sqrt(4.0 * params.t * 41.5) / h)) + 1);
        std::vector<double> raw(static_cast<size_t>(2 * radius + 1));
        for (int o = -radius; o <= radius; ++o)
            raw[static_cast<size_t>(radius + o)] = std::exp(-(o * h) * (o * h) / (4.0 * params.t));
        return sampled(radius, h, raw, mass);
    }
    if (name == "box") {
        if (params.box_cells < 0) throw std::invalid_argument("box kernel needs half-width >= 0");
        int radius = std::min(max_radius, params.box_cells);
        std::vector<double> raw(static_cast<size_t>(2 * radius + 1), 1.0);
        return sampled(radius, h, raw, mass);
    }
    if (name == "exponential") {
        if (!(params.lambda > 0.0)) throw std::invalid_argument("exponential kernel needs lambda > 0");
        int radius = std::min(max_radius, static_cast<int>(std::ceil(41.5 / (params.lambda * h))) + 1);
        std::vector<double> raw(static_cast<size_t>(2 * radius + 1));
        for (int o = -radius; o <= radius; ++o)
            raw[static_cast<size_t>(radius + o)] = std::exp(-params.lambda * std::fabs(o * h));
        return sampled(radius, h, raw, mass);
    }
    if (name == "one_sided_exponential") {
        if (!(params.lambda > 0.0))
            throw std::invalid_argument("one-sided exponential kernel needs lambda > 0");
        int radius = std::min(max_radius, static_cast<int>(std::ceil(41.5 / (params.lambda * h))) + 1);
        std::vector<double> raw(static_cast<size_t>(2 * radius + 1), 0.0);
        for (int o = 0; o <= radius; ++o)
            raw[static_cast<size_t>(radius + o)] = std::exp(-params.lambda * o * h);
        if (params.mass.has_value()) return sampled(radius, h, raw, mass);
        // Default: scale so the even majorant integrates to exactly 1.
        double even_integral = raw[static_cast<size_t>(radius)];
        for (int o = 1; o <= radius; ++o) even_integral += 2.0 * raw[static_cast<size_t>(radius + o)];
        even_integral *= h;
        std::vector<double> scaled(raw);
        for (double& x : scaled) x /= even_integral;
        return Kernel(radius, h, std::move(scaled));
    }
    throw std::invalid_argument("unknown kernel name: " + name);
}

}  // namespace weightlab::kernels
