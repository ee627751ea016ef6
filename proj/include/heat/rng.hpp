#pragma once

#include <cstdint>

namespace heat {

/// SplitMix64 (Steele, Lea, Flood / Vigna's public-domain constants).
/// Chosen because the whole algorithm fits in six lines: golden vectors
/// recorded against it stay valid on any platform.
///
///   state += 0x9e3779b97f4a7c15
///   z = state
///   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///   return z ^ (z >> 31)
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double next_double() {
        return double(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in {0, ..., bound} by modulo reduction. The modulo
    /// bias is below 2^-53 for the bounds used here (bound < 2^10).
    std::uint64_t next_bounded(std::uint64_t bound) {
        return next() % (bound + 1);
    }

private:
    std::uint64_t state_;
};

}  // namespace heat
