#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace csdfd {

// xoshiro256** seeded through splitmix64. Every random draw in the library
// flows through this generator, so any artifact (datasets, runs, reports) is
// reproducible byte for byte from a 64-bit seed, and the stream can be
// re-derived in other languages from the algorithm id alone.
class Rng {
public:
    static constexpr std::string_view kAlgorithmId = "xoshiro256ss";

    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01();
    double uniform(double lo, double hi);

    // Standard normal, Box-Muller on two fresh uniforms; second value cached.
    double normal();
    double normal(double mean, double stddev);

    // Unbiased integer in [0, bound); bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::array<std::uint64_t, 4> state_{};
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace csdfd
