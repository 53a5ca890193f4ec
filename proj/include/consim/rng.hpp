#pragma once

// Deterministic random source used throughout the library.
//
// splitmix64 mixes and derives seeds, xoshiro256** produces the streams.
// Both algorithms are fixed, with their published constants, so that the
// same seed yields the same stream on every platform and compiler. Golden
// tests pin the outputs; changing anything here invalidates every recorded
// experiment.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace consim {

/// splitmix64 step: advance by the golden-ratio increment, then finalize.
/// Avalanche-quality mixing; used to spread correlated inputs (master seed,
/// run id, substream tag) into independent-looking seeds.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Odd stride decorrelating consecutive run ids before mixing.
inline constexpr std::uint64_t kSeedStride = 0x9e3779b97f4a7c15ull;

/// Odd stride decorrelating substream tags within one run.
inline constexpr std::uint64_t kSubstreamStride = 0xd1b54a32d192ed03ull;

/// Per-run seed: run_seed = mix64(master_seed XOR run_id * stride).
/// Runs can execute in any order or in parallel and still see the same
/// private stream.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                                  std::uint64_t index) noexcept {
    return mix64(master_seed ^ (index * kSeedStride));
}

/// Tagged substream of a run seed (tag 0, 1, 2, ... give independent streams).
[[nodiscard]] constexpr std::uint64_t substream_seed(std::uint64_t seed,
                                                     std::uint64_t tag) noexcept {
    return mix64(seed ^ (tag * kSubstreamStride));
}

/// xoshiro256** stream seeded from a single 64-bit value via splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        // Seed expansion per the xoshiro authors' recommendation. The
        // splitmix64 expansion never produces the all-zero state.
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() noexcept {
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

    /// Uniform double in [0, 1), 53 random mantissa bits.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept {
        return lo + next_double() * (hi - lo);
    }

    /// True with probability p. p <= 0 never fires, p >= 1 always does.
    bool bernoulli(double p) noexcept { return next_double() < p; }

    /// Unbiased integer in [0, bound) via rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) {
            throw std::invalid_argument("Rng::below: bound must be positive");
        }
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            using std::swap;
            swap(values[i - 1], values[static_cast<std::size_t>(below(i))]);
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace consim
