#pragma once

#include <cstdint>
#include <random>

#include "latsym/field.hpp"

namespace latsym {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// SplitMix64 finalizer; derives independent stream seeds from (seed, index).
[[nodiscard]] constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform doubles on [0, 1) built from the top 53 bits of mt19937_64, so
/// sequences do not depend on the standard library's distribution code.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

private:
    std::mt19937_64 engine_;
};

/// i.i.d. uniform [0, 1) field over the window.
[[nodiscard]] inline Field2D random_field(IndexRange m_range, IndexRange n_range, std::uint64_t seed) {
    UniformSource uniform(seed);
    return Field2D::generate(m_range, n_range, [&uniform](IndexPoint) { return uniform(); });
}

[[nodiscard]] inline Profile1D random_profile(IndexRange range, std::uint64_t seed) {
    UniformSource uniform(seed);
    return Profile1D::generate(range, [&uniform](std::int64_t) { return uniform(); });
}

}  // namespace latsym
