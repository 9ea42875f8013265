#pragma once

#include <cstdint>

#include "cayspec/int128.hpp"
#include "cayspec/rational.hpp"

namespace cayspec {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline u64 mix64(u64 z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// All randomized operations in this library draw from this generator and
// nothing else, so identical seeds reproduce identical runs bit for bit.
class SplitMix64 {
public:
    explicit SplitMix64(u64 seed) : state_(seed) {}

    u64 next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    // Top 53 bits, uniform on [0, 2^53).
    u64 bits53() { return next() >> 11; }

    // Exact Bernoulli(p): compares the 53-bit uniform against p * 2^53 in
    // integer arithmetic; p must lie in [0, 1].
    bool bernoulli(const Rational& p) {
        u64 u = bits53();
        return i128(u) * p.den() < i128(p.num()) << 53;
    }

    // Bernoulli with a double threshold in [0, 1] (used where the
    // probability itself is a floating-point quantity).
    bool bernoulli(double p) { return double(bits53()) < p * 9007199254740992.0; }

    // Unbiased uniform draw from [0, bound), bound >= 1.
    u64 below(u64 bound) {
        u64 threshold = (0 - bound) % bound;
        for (;;) {
            u64 r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    u64 state_;
};

// Seed for the i-th independent sub-stream of a run.  Trials derived this
// way may execute in any order without changing their individual outputs.
inline u64 derive_seed(u64 seed, u64 index) {
    return mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

}  // namespace cayspec
