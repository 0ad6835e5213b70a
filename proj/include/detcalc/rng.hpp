#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace detcalc {

/// splitmix64 output mix; also the documented scene-seed derivation:
/// scene_seed = mix64(base_seed + (index + 1) * 0x9E3779B97F4A7C15).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t index) {
    return mix64(base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Small deterministic generator (splitmix64 stream). Distributions are
/// implemented here rather than taken from <random> so that identical
/// seeds produce identical streams on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform index in [0, n).
    std::size_t uniform_index(std::size_t n) {
        return n == 0 ? 0 : static_cast<std::size_t>(next() % n);
    }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform_index(static_cast<std::size_t>(hi - lo + 1)));
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    /// Knuth's product method; adequate for the small rates used here.
    int poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        const double limit = std::exp(-lambda);
        int count = 0;
        double product = uniform();
        while (product > limit) {
            ++count;
            product *= uniform();
        }
        return count;
    }

private:
    std::uint64_t state_;
};

} // namespace detcalc
