#pragma once

#include "weightlab/grid.hpp"
#include "weightlab/lattice.hpp"
#include "weightlab/rng.hpp"

namespace weightlab::sampling {

// Seeded generators shared by the verification battery and the tests.
// Weights mix three recipes (log-normal noise, power singularity with mild
// noise, two-level step) so the Muckenhoupt constants cover a wide range
// without leaving double precision.
Weight random_weight(Rng& rng, const Grid1D& grid);

// Nonnegative, not identically zero: folded normals with sparse spikes.
GridFunction random_nonneg(Rng& rng, const Grid1D& grid);

// Signed field with a sprinkling of exact zeros.
GridFunction random_signed(Rng& rng, const Grid1D& grid);

std::vector<double> random_fiber(Rng& rng, int64_t dim);

LatticeFunction random_lattice_nonneg(Rng& rng, const Grid1D& grid, const MixedSpace& space);

}  // namespace weightlab::sampling
