#include "weightlab/lattice.hpp"

#include <cmath>

namespace weightlab {

std::vector<double> MixedSpace::flat_masses() const {
    std::vector<double> out{1.0};
    for (const auto& axis : axes) {
        std::vector<double> next;
        next.reserve(out.size() * axis.masses.size());
        for (double outer : out)
            for (double m : axis.masses) next.push_back(outer * m);
        out = std::move(next);
    }
    return out;
}

MixedSpace MixedSpace::dual() const {
    std::vector<double> qd;
    qd.reserve(q.size());
    for (double e : q) qd.push_back(conjugate_exponent(e));
    return MixedSpace(axes, qd);
}

bool MixedSpace::flat_exponent(double* q_out) const {
    if (q.empty()) return false;
    for (double e : q)
        if (e != q.front()) return false;
    if (q_out) *q_out = q.front();
    return true;
}

Tensor::Tensor(std::vector<int> shape_, std::vector<double> values)
    : shape(std::move(shape_)), v(std::move(values)) {
    int64_t want = 1;
    for (int d : shape) {
        if (d <= 0) throw std::invalid_argument("tensor dimensions must be positive");
        want *= d;
    }
    if (static_cast<int64_t>(v.size()) != want)
        throw std::invalid_argument("tensor value count does not match shape");
}

Tensor Tensor::zeros(std::vector<int> shape_) {
    int64_t want = 1;
    for (int d : shape_) want *= d;
    return Tensor(std::move(shape_), std::vector<double>(static_cast<size_t>(want), 0.0));
}

LatticeFunction::LatticeFunction(Grid1D g, MixedSpace sp, std::vector<double> values)
    : grid(g), space(std::move(sp)), v(std::move(values)) {
    if (static_cast<int64_t>(v.size()) != grid.n * space.dim())
        throw std::invalid_argument("lattice function value count does not match grid x space");
}

double weighted_lp_norm(const GridFunction& f, double p, const Weight& w) {
    check_exponent(p, "p");
    if (!(f.grid == w.fn.grid))
        throw std::invalid_argument("function and weight must share a grid");
    double acc = 0.0;
    for (int i = 0; i < f.grid.n; ++i)
        acc += std::pow(std::fabs(f.v[i]), p) * w.fn.v[i];
    return std::pow(f.grid.h * acc, 1.0 / p);
}

namespace {

// One reduction of the innermost axis: out[g] = weighted l^q norm of the
// inner block of `in` at group g.
void reduce_last_axis(const std::vector<double>& in, int64_t groups, int inner,
                      const std::vector<double>& masses, double q, std::vector<double>& out) {
    out.resize(static_cast<size_t>(groups));
    for (int64_t g = 0; g < groups; ++g) {
        const double* block = in.data() + g * inner;
        double acc = 0.0;
        if (q == 2.0) {
            for (int j = 0; j < inner; ++j)
                acc += masses[static_cast<size_t>(j)] * block[j] * block[j];
            out[static_cast<size_t>(g)] = std::sqrt(acc);
        } else if (q == 1.0) {
            for (int j = 0; j < inner; ++j)
                acc += masses[static_cast<size_t>(j)] * std::fabs(block[j]);
            out[static_cast<size_t>(g)] = acc;
        } else {
            for (int j = 0; j < inner; ++j)
                acc += masses[static_cast<size_t>(j)] * std::pow(std::fabs(block[j]), q);
            out[static_cast<size_t>(g)] = std::pow(acc, 1.0 / q);
        }
    }
}

}  // namespace

double mixed_norm_flat(std::span<const double> v, const MixedSpace& space) {
    if (static_cast<int64_t>(v.size()) != space.dim())
        throw std::invalid_argument("value count does not match space dimension");
    if (space.rank() == 0) return std::fabs(v[0]);
    std::vector<double> cur(v.begin(), v.end());
    std::vector<double> next;
    int64_t groups = space.dim();
    for (int axis = space.rank() - 1; axis >= 0; --axis) {
        int inner = space.axes[static_cast<size_t>(axis)].size();
        groups /= inner;
        reduce_last_axis(cur, groups, inner, space.axes[static_cast<size_t>(axis)].masses,
                         space.q[static_cast<size_t>(axis)], next);
        cur.swap(next);
    }
    return cur[0];
}

double mixed_norm(const Tensor& f, const MixedSpace& space) {
    if (f.shape != space.shape())
        throw std::invalid_argument("tensor shape does not match space axes");
    return mixed_norm_flat(f.v, space);
}

namespace {

double tuple_combine_and_reduce(const std::vector<std::span<const double>>& fs, double s,
                                const MixedSpace& space) {
    check_s_exponent(s);
    int64_t d = space.dim();
    std::vector<double> combined(static_cast<size_t>(d), 0.0);
    if (s == kInf) {
        for (const auto& f : fs)
            for (int64_t i = 0; i < d; ++i) {
                double a = std::fabs(f[static_cast<size_t>(i)]);
                if (a > combined[static_cast<size_t>(i)]) combined[static_cast<size_t>(i)] = a;
            }
    } else if (s == 2.0) {
        for (const auto& f : fs)
            for (int64_t i = 0; i < d; ++i) {
                double a = f[static_cast<size_t>(i)];
                combined[static_cast<size_t>(i)] += a * a;
            }
        for (auto& x : combined) x = std::sqrt(x);
    } else if (s == 1.0) {
        for (const auto& f : fs)
            for (int64_t i = 0; i < d; ++i)
                combined[static_cast<size_t>(i)] += std::fabs(f[static_cast<size_t>(i)]);
    } else {
        for (const auto& f : fs)
            for (int64_t i = 0; i < d; ++i)
                combined[static_cast<size_t>(i)] += std::pow(std::fabs(f[static_cast<size_t>(i)]), s);
        for (auto& x : combined) x = std::pow(x, 1.0 / s);
    }
    return mixed_norm_flat(combined, space);
}

}  // namespace

double tuple_norm(std::span<const Tensor> fs, double s, const MixedSpace& space) {
    if (fs.empty()) throw std::invalid_argument("tuple must be nonempty");
    std::vector<std::span<const double>> views;
    views.reserve(fs.size());
    for (const auto& f : fs) {
        if (f.shape != space.shape())
            throw std::invalid_argument("tuple entry shape does not match space axes");
        views.emplace_back(f.v);
    }
    return tuple_combine_and_reduce(views, s, space);
}

double tuple_norm_flat(const std::vector<std::vector<double>>& fs, double s,
                       const MixedSpace& space) {
    if (fs.empty()) throw std::invalid_argument("tuple must be nonempty");
    std::vector<std::span<const double>> views;
    views.reserve(fs.size());
    for (const auto& f : fs) {
        if (static_cast<int64_t>(f.size()) != space.dim())
            throw std::invalid_argument("tuple entry size does not match space dimension");
        views.emplace_back(f);
    }
    return tuple_combine_and_reduce(views, s, space);
}

GridFunction fiber_norms(const LatticeFunction& f) {
    std::vector<double> out(static_cast<size_t>(f.grid.n));
    for (int i = 0; i < f.grid.n; ++i)
        out[static_cast<size_t>(i)] = mixed_norm_flat(f.fiber(i), f.space);
    return GridFunction(f.grid, std::move(out));
}

double lattice_lp_norm(const LatticeFunction& f, double p, const Weight& w) {
    return weighted_lp_norm(fiber_norms(f), p, w);
}

}  // namespace weightlab
