#pragma once

#include "latsym/csv.hpp"
#include "latsym/equations.hpp"
#include "latsym/error.hpp"
#include "latsym/field.hpp"
#include "latsym/front.hpp"
#include "latsym/lattice.hpp"
#include "latsym/random.hpp"
#include "latsym/simulator.hpp"
#include "latsym/symmetry.hpp"

namespace latsym {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace latsym
