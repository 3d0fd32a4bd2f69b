#ifndef CORRMETRIC_RNG_HPP
#define CORRMETRIC_RNG_HPP

#include <cmath>
#include <cstdint>

namespace corrmetric {

/// Name recorded in reports produced from random sweeps.
inline constexpr const char* kGeneratorName = "splitmix64-boxmuller";

/// SplitMix64 (Vigna / Java SplittableRandom). Counter-based: the i-th output
/// (0-based) is mix64(seed + (i+1) * 0x9E3779B97F4A7C15), so discard() is O(1)
/// and any position in the stream can be addressed directly. This is what
/// makes seeded sweeps reproducible across platforms and thread counts.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Advances the stream by n outputs without generating them.
    void discard(std::uint64_t n) noexcept { state_ += n * 0x9E3779B97F4A7C15ull; }

    /// Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double next_unit() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1], safe as a log() argument.
    double next_unit_open() noexcept {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller, always consuming exactly two outputs
    /// (the sine twin is dropped to keep the per-draw stream cost fixed).
    double next_normal() noexcept {
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform index in [0, n), n >= 1. Modulo is biased in principle but
    /// reproducible everywhere, which is what the build contract needs.
    std::uint64_t next_below(std::uint64_t n) noexcept { return next() % n; }

private:
    std::uint64_t state_;
};

}  // namespace corrmetric

#endif
