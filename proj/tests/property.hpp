#pragma once

#include <cstdint>
#include <string>

#include <gtest/gtest.h>

#include "latsym/random.hpp"

namespace latsym::test {

/// Runs `body(uniform, case_index)` for `cases` seeded cases; each case gets
/// its own stream so a failure reports a reproducible (seed, case) pair.
template <typename Body>
void for_all(std::size_t cases, std::uint64_t seed, Body&& body) {
    for (std::size_t i = 0; i < cases; ++i) {
        UniformSource uniform(mix_seed(seed, i));
        SCOPED_TRACE("property case " + std::to_string(i) + " seed " + std::to_string(seed));
        body(uniform, i);
        if (::testing::Test::HasFatalFailure()) return;
    }
}

inline std::int64_t uniform_int(UniformSource& u, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(u() * static_cast<double>(hi - lo + 1));
}

}  // namespace latsym::test
