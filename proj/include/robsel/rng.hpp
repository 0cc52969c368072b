#pragma once

#include <cstdint>
#include <random>

namespace robsel {

// splitmix64 mixing step; used to derive independent seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic seed for stream `index` under `master`. Streams for distinct
// indices are independent for practical purposes.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

// mt19937_64 with hand-rolled value extraction. The engine itself is
// bit-reproducible by the standard; the std::uniform_* distributions are not,
// so we never use them.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1).
    double next_open_unit() {
        double u;
        do {
            u = next_unit();
        } while (u == 0.0);
        return u;
    }

    // Uniform integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
    int next_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return lo + static_cast<int>(x % span);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace robsel
