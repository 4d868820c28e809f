#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab::kernels {

// Convolution kernel sampled on offsets -radius..radius with cell width h.
struct Kernel {
    int radius = 0;
    double h = 1.0;
    std::vector<double> v;  // v[radius + offset]

    Kernel() = default;
    Kernel(int radius_, double h_, std::vector<double> values);
    double at_offset(int o) const { return v[static_cast<size_t>(radius + o)]; }
    double mass_l1() const;  // h * sum |v|
    Kernel reflected() const;
};

// Least even nonincreasing majorant, sampled at radii 0..radius:
// phi[j] = max over |offset| >= j of |k(offset)|.
struct MajorantProfile {
    double h = 1.0;
    std::vector<double> phi;
    // Integral of the even extension: h * (phi[0] + 2 sum_{j>=1} phi[j]).
    double integral() const;
};

MajorantProfile least_decreasing_majorant(const Kernel& k);

enum class Membership { certified, refuted, undetermined };

// Membership in {k in L^1 : |k| * f <= Mf for nonnegative f}.
// Certified when the majorant integral is <= 1 (a sound criterion: the
// layer-cake decomposition of the majorant turns the convolution into a
// mix of interval averages). Refuted by an explicit nonnegative witness.
struct MembershipVerdict {
    Membership status = Membership::undetermined;
    MajorantProfile majorant;
    double majorant_integral = 0.0;
    double l1_mass = 0.0;
    std::optional<GridFunction> counterexample;
    int violation_cell = -1;
    double violation_excess = 0.0;
};

MembershipVerdict in_class_k(const Kernel& k, int refute_trials, uint64_t seed);

// Zero-padded convolution on the window of f: (k*f)(i) = h sum_j k(i-j) f(j).
GridFunction convolve(const Kernel& k, const GridFunction& f);

// Named kernels. mass (default 1) must lie in (0, 1]; the one-sided
// exponential defaults to the normalization that puts its even majorant at
// integral exactly 1 (so it is certified by construction).
struct CatalogParams {
    double t = 0.0;       // gaussian time
    double lambda = 0.0;  // exponential rate
    int box_cells = 0;    // box half-width in cells
    std::optional<double> mass;
};
Kernel catalog(const std::string& name, const CatalogParams& params, const Grid1D& grid);

}  // namespace weightlab::kernels
