#ifndef RESIDUA_RNG_HPP
#define RESIDUA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace residua {

/// SplitMix64 stream. Hand-rolled so draws are identical across compilers
/// and standard libraries; seeded runs must reproduce bit-for-bit.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0, 1).
    double uniform01_open() {
        double u;
        do {
            u = uniform01();
        } while (u <= 0.0);
        return u;
    }

    /// Standard normal via Box-Muller (no cached spare; one draw per call
    /// keeps the stream position easy to reason about).
    double normal() {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    bool next_bool() { return (next_u64() & 1ULL) != 0ULL; }

    /// Decorrelated substream for (seed, lane, index) tuples.
    static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t lane,
                                 std::uint64_t index) {
        SplitMix64 rng(seed ^ (lane * 0x9E3779B97F4A7C15ULL) ^
                       (index * 0xD1B54A32D192ED03ULL));
        rng.next_u64();
        return rng;
    }

private:
    std::uint64_t state_;
};

}  // namespace residua

#endif  // RESIDUA_RNG_HPP
