#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace weightlab {

// Deterministic random source. std::mt19937_64 output is pinned by the
// standard, and all distributions below are derived from it with explicit
// arithmetic, so a seed reproduces the same stream on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Uniform integer in [0, n).
    int uniform_int(int n) {
        return n <= 1 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(n));
    }

    // Box-Muller; the second variate is discarded to keep call sites
    // stateless with respect to parity.
    double normal() {
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    double exponential(double rate = 1.0) {
        return -std::log(1.0 - uniform()) / rate;
    }

    // Independent substream keyed by `salt`; advances this stream once.
    Rng fork(uint64_t salt) {
        uint64_t z = next() ^ (salt + 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace weightlab
