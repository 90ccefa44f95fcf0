#pragma once

#include <cstdint>

#include "perturb/rational.hpp"

namespace perturb {

// splitmix64 (Steele, Lea, Flood). Fixed, portable stream semantics: stream k
// of seed s starts from state s + (k + 1) * 0x9E3779B97F4A7C15 and the first
// output is discarded. Every experiment and generator in this project draws
// from these streams, so seeded runs are reproducible across platforms.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0) {
        state_ = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
        next();
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [-2^31, 2^31).
    std::int64_t next_int32_range() {
        return static_cast<std::int64_t>(next() & 0xFFFFFFFFULL) - (1LL << 31);
    }

    std::int64_t next_nonzero_int32_range() {
        std::int64_t v;
        do {
            v = next_int32_range();
        } while (v == 0);
        return v;
    }

    // Ratio of a uniform integer in [-2^31, 2^31) over a uniform nonzero one.
    Rational next_rational() {
        long n = static_cast<long>(next_int32_range());
        long d = static_cast<long>(next_nonzero_int32_range());
        return Rational(n, d);
    }

    // Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

  private:
    std::uint64_t state_;
};

}  // namespace perturb
