#pragma once

#include <cstdint>

#include "rootframe/types.hpp"

namespace rootframe {

/// SplitMix64 generator (Steele, Lea, Flood 2014). 64-bit state, fixed
/// output sequence on every platform; used wherever reproducible draws are
/// part of a contract (random separating functionals, seeded fixtures).
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    std::uint64_t operator()() { return next(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller (no cached second sample).
    double normal();

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

private:
    std::uint64_t state_;
};

/// Point drawn uniformly from the unit sphere in R^dim.
Vector random_unit_vector(SplitMix64& rng, int dim);

inline constexpr std::uint64_t kDefaultSeed = 0x726f6f74'6672616dULL;

} // namespace rootframe
