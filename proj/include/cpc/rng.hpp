#pragma once

#include <cstdint>

namespace cpc {

// splitmix64 (Steele, Lea & Flood / Vigna). One 64-bit word of state, full
// period 2^64, and trivially splittable: any output can seed an independent
// stream. Doubles are built from the top 53 bits so sequences are
// bit-identical across platforms, which is what keeps seeded simulations
// reproducible byte for byte.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // Independent derived stream.
    SplitMix64 split() { return SplitMix64(next_u64()); }

private:
    std::uint64_t state_;
};

inline constexpr const char* kRngAlgorithm = "splitmix64";

}  // namespace cpc
