#pragma once

#include <cstdint>
#include <initializer_list>

namespace qmv {

// Counter-style 64-bit generator (splitmix64 mixing function).  Every random
// draw in the toolkit flows through this class so that transcripts are
// reproducible across platforms and standard-library versions; none of the
// std::<distribution> classes are used anywhere.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw from [0, bound) by rejection.
    uint64_t uniform_u64(uint64_t bound) {
        uint64_t limit = bound * (UINT64_MAX / bound);
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    // Inclusive range.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(uniform_u64(static_cast<uint64_t>(hi - lo) + 1));
    }

    // Uniform in [0, 1), 53 bits of precision.
    double uniform_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform_double() < p; }

  private:
    uint64_t state_;
};

// Derives an independent stream seed from a base seed and a list of tags
// (trial index, repetition index, ...).  Each tag is absorbed through one
// splitmix64 round, so streams for distinct tag lists are uncorrelated and
// the derivation is documented, stable arithmetic.
inline uint64_t derive_seed(uint64_t seed, std::initializer_list<uint64_t> tags) {
    uint64_t h = seed;
    for (uint64_t t : tags) {
        h ^= t + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        uint64_t z = h + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h = z ^ (z >> 31);
    }
    return h;
}

} // namespace qmv
