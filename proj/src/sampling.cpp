#include "weightlab/sampling.hpp"

#include <cmath>

#include "weightlab/weights.hpp"

namespace weightlab::sampling {

Weight random_weight(Rng& rng, const Grid1D& grid) {
    std::vector<double> v(grid.n);
    switch (rng.uniform_int(3)) {
        case 0: {
            double rough = rng.uniform(0.4, 1.2);
            for (double& x : v) x = std::exp(rough * rng.normal());
            break;
        }
        case 1: {
            // Power singularity, kept well inside the A_p range, with mild
            // multiplicative noise so the constant is not a closed form.
            double a = rng.uniform(-0.5, 1.5);
            Weight base = weights::power_weight(a, grid);
            for (int i = 0; i < grid.n; ++i)
                v[i] = base.fn.v[i] * std::exp(0.2 * rng.normal());
            break;
        }
        default: {
            double level = std::exp(rng.uniform(0.5, 3.0));
            int flips = 1 + rng.uniform_int(3);
            std::vector<int> cuts(flips);
            for (int& c : cuts) c = rng.uniform_int(grid.n);
            for (int i = 0; i < grid.n; ++i) {
                int parity = 0;
                for (int c : cuts) parity ^= (i >= c);
                v[i] = parity ? level : 1.0;
            }
            break;
        }
    }
    return make_weight(GridFunction(grid, std::move(v)));
}

GridFunction random_nonneg(Rng& rng, const Grid1D& grid) {
    std::vector<double> v(grid.n);
    for (double& x : v) x = std::abs(rng.normal());
    int spikes = 1 + rng.uniform_int(3);
    for (int s = 0; s < spikes; ++s)
        v[rng.uniform_int(grid.n)] += std::exp(rng.uniform(0.0, 3.0));
    return GridFunction(grid, std::move(v));
}

GridFunction random_signed(Rng& rng, const Grid1D& grid) {
    std::vector<double> v(grid.n);
    for (double& x : v) x = rng.uniform() < 0.2 ? 0.0 : rng.normal();
    return GridFunction(grid, std::move(v));
}

std::vector<double> random_fiber(Rng& rng, int64_t dim) {
    std::vector<double> v(static_cast<size_t>(dim));
    for (double& x : v) x = rng.normal();
    return v;
}

LatticeFunction random_lattice_nonneg(Rng& rng, const Grid1D& grid, const MixedSpace& space) {
    int64_t d = space.dim();
    std::vector<double> v(static_cast<size_t>(grid.n) * static_cast<size_t>(d));
    for (double& x : v) x = std::abs(rng.normal());
    int spikes = 1 + rng.uniform_int(3);
    for (int s = 0; s < spikes; ++s) {
        size_t at = static_cast<size_t>(rng.uniform_int(grid.n)) * static_cast<size_t>(d) +
                    static_cast<size_t>(rng.uniform_int(static_cast<int>(d)));
        v[at] += std::exp(rng.uniform(0.0, 3.0));
    }
    return LatticeFunction(grid, space, std::move(v));
}

}  // namespace weightlab::sampling
