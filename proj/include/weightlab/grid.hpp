#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace weightlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Finite exponents live in [1.01, 100]; s-parameters additionally admit
// infinity (realized as a max reduction). The floor keeps inverse powers
// like w^{-1/(p-1)} representable in double precision.
inline constexpr double kExponentMin = 1.01;
inline constexpr double kExponentMax = 100.0;

inline void check_exponent(double p, const char* what = "exponent") {
    if (!(p >= kExponentMin && p <= kExponentMax))
        throw std::invalid_argument(std::string(what) + " must lie in [1.01, 100], got " +
                                    std::to_string(p));
}

inline void check_s_exponent(double s) {
    if (s == kInf) return;
    if (!(s >= 1.0 && s <= kExponentMax))
        throw std::invalid_argument("s must lie in [1, 100] or be infinity, got " +
                                    std::to_string(s));
}

// Conjugate exponent p' with 1/p + 1/p' = 1.
inline double conjugate_exponent(double p) {
    if (p == kInf) return 1.0;
    if (p == 1.0) return kInf;
    if (p < 1.0) throw std::invalid_argument("conjugate requires p >= 1");
    return p / (p - 1.0);
}

// Uniform 1-d grid of n cells [origin + i*h, origin + (i+1)*h).
struct Grid1D {
    double origin = 0.0;
    double h = 1.0;
    int n = 0;

    Grid1D() = default;
    Grid1D(double origin_, double h_, int n_) : origin(origin_), h(h_), n(n_) {
        if (!(h > 0.0)) throw std::invalid_argument("grid cell width must be positive");
        if (n <= 0) throw std::invalid_argument("grid must have at least one cell");
    }

    double cell_left(int i) const { return origin + i * h; }
    double cell_right(int i) const { return origin + (i + 1) * h; }
    double cell_center(int i) const { return origin + (i + 0.5) * h; }

    bool operator==(const Grid1D& o) const {
        return origin == o.origin && h == o.h && n == o.n;
    }
};

// Piecewise constant function on a Grid1D (one value per cell; zero
// outside the window by convention).
struct GridFunction {
    Grid1D grid;
    std::vector<double> v;

    GridFunction() = default;
    GridFunction(Grid1D g, std::vector<double> values) : grid(g), v(std::move(values)) {
        if (static_cast<int>(v.size()) != grid.n)
            throw std::invalid_argument("grid function needs one value per cell");
    }
};

// Strictly positive grid function.
struct Weight {
    GridFunction fn;
};

inline Weight make_weight(GridFunction f) {
    for (double x : f.v)
        if (!(x > 0.0)) throw std::invalid_argument("weight values must be strictly positive");
    return Weight{std::move(f)};
}

}  // namespace weightlab
