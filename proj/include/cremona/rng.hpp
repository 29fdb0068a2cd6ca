#pragma once

#include <cstdint>

#include "cremona/rational.hpp"

namespace cremona {

// splitmix64: tiny deterministic PRNG. We do not use <random> engines for
// report-affecting sampling so that output bytes are identical across
// platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi] inclusive.
    long next_in(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(next() % span);
    }

    Rational next_small_rational(long max_abs = 50) {
        long num = next_in(-max_abs, max_abs);
        long den = next_in(1, 4);
        return make_rational(num, den);
    }

private:
    std::uint64_t state_;
};

} // namespace cremona
