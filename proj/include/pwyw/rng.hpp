#pragma once

#include <cstdint>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pwyw {

// Deterministic seeded RNG substreams.
//
// Every consumer draws from its own substream derived from (seed, purpose,
// index), so sampling is reproducible bit-for-bit regardless of call order
// or thread count. The engine is std::mt19937_64 (fully specified by the
// standard); the uniform/normal transforms are hand-rolled because the
// std::*_distribution classes are implementation-defined.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Substream id space: purpose 0 = per-consumer parameter draws,
// purpose 1 = free-rider shuffle. Extend as needed.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t purpose,
                                    std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= purpose * 0xD1B54A32D192ED03ULL;
    std::uint64_t b = splitmix64(s);
    s ^= index * 0x8CB92BA72F3D8DD7ULL;
    std::uint64_t c = splitmix64(s);
    return a ^ (b + 0x9E3779B97F4A7C15ULL) ^ (c << 1);
}

class Substream {
public:
    explicit Substream(std::uint64_t seed) : engine_(seed) {}

    Substream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index)
        : engine_(substream_seed(seed, purpose, index)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi). Requires lo <= hi.
    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Normal(mean, sd) conditioned on [lo, hi] by rejection.
    double truncated_normal(double mean, double sd, double lo, double hi) {
        for (int attempt = 0; attempt < 100000; ++attempt) {
            double x = normal(mean, sd);
            if (x >= lo && x <= hi) return x;
        }
        throw std::runtime_error(
            "truncated_normal: rejection sampling failed (truncation window "
            "too far from the mean?)");
    }

    // Uniform integer in [0, bound). Used for shuffling; the negligible
    // modulo bias does not matter there and keeps the draw count fixed.
    std::uint64_t bounded(std::uint64_t bound) {
        return bound < 2 ? 0 : engine_() % bound;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace pwyw
