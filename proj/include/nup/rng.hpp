#pragma once

#include <cstdint>
#include <random>

namespace nup {

/// Seedable pseudorandom source with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Floating-point draws map the raw 64-bit words directly instead
/// of going through std::uniform_real_distribution, whose results are
/// implementation-defined. Identical seeds therefore reproduce identical
/// streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t integer(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
};

}  // namespace nup
