#pragma once

#include <cstdint>

// Reproducible randomness. The standard <random> distributions produce
// implementation-defined sequences, so every draw here is hand-specified:
// splitmix64 expands seeds, xoshiro256** generates, and bounded() maps to a
// range without bias (Lemire's multiply-shift rejection). Results are
// bit-identical across platforms and across worker counts, because each unit
// of work derives its own stream from (master seed, stream index).

namespace balsched {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for stream `stream` of a run keyed by `master`. Two mixing rounds keep
// nearby (master, stream) pairs statistically unrelated.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master;
    std::uint64_t folded = splitmix64_next(s) ^ stream;
    return splitmix64_next(folded);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, n), unbiased for every n >= 1.
    std::uint64_t bounded(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

// Destination draw shared by the allocator and every Monte Carlo estimator:
// both must sample schedules through the exact same routine.
inline int sample_destination(Rng& rng, int schedule_count) {
    return static_cast<int>(rng.bounded(static_cast<std::uint64_t>(schedule_count)));
}

}  // namespace balsched
