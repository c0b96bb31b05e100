#pragma once
#include <cstdint>
#include <random>

#include "sdgreen/geometry.hpp"

namespace sdgreen {

/// Default seed for randomized checks; overridable via --seed.
inline constexpr std::uint64_t kDefaultSeed = 0x5D5EED;

/// Deterministic uniform generator. Doubles are produced directly from the
/// mt19937_64 bit stream so results do not depend on the standard library's
/// distribution implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double uniform_pm1() { return 2.0 * uniform() - 1.0; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Point point_in_unit_square() { return {uniform(), uniform()}; }

private:
    std::mt19937_64 eng_;
};

}  // namespace sdgreen
