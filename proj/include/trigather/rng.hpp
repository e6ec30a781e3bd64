#pragma once

#include <cstdint>
#include <vector>

namespace trigather {

/// Finalizer of the splitmix64 generator: a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// splitmix64: tiny, platform-independent, and fast. All randomness in a run
/// flows from one of these so traces are bit-reproducible everywhere.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    /// Unbiased uniform draw from [0, bound). bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        for (;;) {
            const std::uint64_t r = next();
            if (r < limit) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
};

/// Stream purposes, so independently derived sub-streams never collide.
enum class StreamTag : std::uint64_t {
    EpochShuffle = 1,
    DistributedSelect = 2,
    StaleSample = 3,
    GenGrowth = 4,
    SweepInstance = 5,
};

/// Order-independent sub-stream derivation: a pure mix of (seed, tag, index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
    return mix64(mix64(mix64(seed) ^ static_cast<std::uint64_t>(tag)) ^ index);
}

inline SplitMix64 derive_stream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
    return SplitMix64(derive_seed(seed, tag, index));
}

} // namespace trigather
