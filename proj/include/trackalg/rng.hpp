#pragma once

#include <cstdint>

namespace trackalg {

// splitmix64; identical sequences on every platform so sampled law checks
// replay bit-for-bit from the recorded seed.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed = 1) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // The slight modulo bias is irrelevant for sampling test cases.
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
};

} // namespace trackalg
