#pragma once

#include <cstdint>
#include <vector>

namespace comprec {

// splitmix64. Small, fast, and bit-identical on every platform, which the
// deterministic-mode contracts depend on (std:: distributions are not
// portable across standard library implementations).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased-enough integer in [0, n); n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        // Lemire's multiply-shift; the tiny modulo bias is irrelevant here
        // and the method stays portable.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform float in [0, 1).
    float next_float() {
        return static_cast<float>(next_u64() >> 40) * 0x1.0p-24f;
    }

private:
    std::uint64_t state_;
};

// Sample an index proportionally to non-negative weights (cumulative scan).
inline std::size_t weighted_pick(SplitMix64& rng, const std::vector<double>& weights,
                                 double total) {
    double x = rng.next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += weights[i];
        if (x < acc) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
}

}  // namespace comprec
