#pragma once

#include <span>
#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab {

// Finite measure space factor: atoms with strictly positive masses.
struct MeasuredAxis {
    std::vector<double> masses;

    MeasuredAxis() = default;
    explicit MeasuredAxis(std::vector<double> m) : masses(std::move(m)) {
        if (masses.empty()) throw std::invalid_argument("axis needs at least one atom");
        for (double x : masses)
            if (!(x > 0.0)) throw std::invalid_argument("atom masses must be strictly positive");
    }
    static MeasuredAxis counting(int size) {
        return MeasuredAxis(std::vector<double>(static_cast<size_t>(size), 1.0));
    }
    int size() const { return static_cast<int>(masses.size()); }
    bool operator==(const MeasuredAxis& o) const { return masses == o.masses; }
};

// Iterated-norm space L^{q_1}(axis_1, ..., L^{q_n}(axis_n)). A rank-0
// space (no axes) is allowed and reduces every norm to the absolute value,
// which makes scalar pipelines a literal special case of mixed ones.
struct MixedSpace {
    std::vector<MeasuredAxis> axes;
    std::vector<double> q;

    MixedSpace() = default;
    MixedSpace(std::vector<MeasuredAxis> axes_, std::vector<double> q_)
        : axes(std::move(axes_)), q(std::move(q_)) {
        if (axes.size() != q.size())
            throw std::invalid_argument("one exponent per axis required");
        for (double e : q) check_exponent(e, "mixed-space exponent");
    }

    int rank() const { return static_cast<int>(axes.size()); }
    int64_t dim() const {
        int64_t d = 1;
        for (const auto& a : axes) d *= a.size();
        return d;
    }
    std::vector<int> shape() const {
        std::vector<int> s;
        s.reserve(axes.size());
        for (const auto& a : axes) s.push_back(a.size());
        return s;
    }
    // Product masses in row-major order (last axis fastest).
    std::vector<double> flat_masses() const;
    // Same axes with conjugate exponents.
    MixedSpace dual() const;
    bool flat_exponent(double* q_out = nullptr) const;  // all exponents equal?
    bool operator==(const MixedSpace& o) const { return axes == o.axes && q == o.q; }
};

// Dense row-major tensor.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> v;

    Tensor() = default;
    Tensor(std::vector<int> shape_, std::vector<double> values);
    static Tensor zeros(std::vector<int> shape_);
    int64_t size() const { return static_cast<int64_t>(v.size()); }
};

// Function on grid x space, stored cell-major with fiber stride space.dim().
struct LatticeFunction {
    Grid1D grid;
    MixedSpace space;
    std::vector<double> v;

    LatticeFunction() = default;
    LatticeFunction(Grid1D g, MixedSpace sp, std::vector<double> values);
    int64_t fiber_dim() const { return space.dim(); }
    std::span<const double> fiber(int cell) const {
        int64_t d = fiber_dim();
        return std::span<const double>(v.data() + cell * d, static_cast<size_t>(d));
    }
    std::span<double> fiber(int cell) {
        int64_t d = fiber_dim();
        return std::span<double>(v.data() + cell * d, static_cast<size_t>(d));
    }
};

// (h * sum |f_i|^p w_i)^{1/p}.
double weighted_lp_norm(const GridFunction& f, double p, const Weight& w);

// Iterated norm: the last axis is reduced first (innermost exponent), the
// first axis last.
double mixed_norm(const Tensor& f, const MixedSpace& space);
double mixed_norm_flat(std::span<const double> v, const MixedSpace& space);

// || (sum_n |f_n|^s)^{1/s} ||_space, max over n at s = infinity.
double tuple_norm(std::span<const Tensor> fs, double s, const MixedSpace& space);
double tuple_norm_flat(const std::vector<std::vector<double>>& fs, double s,
                       const MixedSpace& space);

// Per-cell mixed norm of the fibers.
GridFunction fiber_norms(const LatticeFunction& f);

// || x -> ||F(x,.)||_space ||_{L^p(w)}.
double lattice_lp_norm(const LatticeFunction& f, double p, const Weight& w);

}  // namespace weightlab
