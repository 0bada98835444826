#pragma once
#include <cstdint>
#include <cmath>

namespace olab {

// Counter-based splittable PRNG.
//
// A trial stream is a pure function of (master_seed, trial_index), so trials
// can be generated in any order / on any thread with identical results.
// Core generator is splitmix64 (Steele, Lea, Flood 2014), which passes BigCrush
// and is more than adequate for Monte Carlo work.

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(SeedSpec seed) {
        // Derive the sub-stream state by feeding both seed words through the
        // mixer; distinct trial indices give statistically independent streams.
        std::uint64_t s = seed.master_seed;
        std::uint64_t a = splitmix64(s);
        s ^= seed.trial_index * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL;
        std::uint64_t b = splitmix64(s);
        state_ = a ^ (b + 0x9e3779b97f4a7c15ULL);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1). 53 random bits; avoids std::uniform_real_distribution,
    // whose output is implementation-defined.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [1, 2^53); used where a strictly positive uniform is needed.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    // Uniform integer in [0, bound) by rejection (bound > 0).
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do { x = next_u64(); } while (x >= limit);
        return x % bound;
    }

    // Number of failures before the next success in Bernoulli(p) trials,
    // i.e. a geometric skip for sparse sampling. p in (0, 1].
    std::uint64_t next_geometric_skip(double p) {
        if (p >= 1.0) return 0;
        const double u = next_unit_open();
        return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
    }

private:
    std::uint64_t state_ = 0;
};

} // namespace olab
