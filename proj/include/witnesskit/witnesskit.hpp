// witnesskit.hpp
// Umbrella header.

#pragma once

#include "mat_core.hpp"      // IWYU pragma: export
#include "witness_maps.hpp"  // IWYU pragma: export
#include "biquad.hpp"        // IWYU pragma: export
#include "states.hpp"        // IWYU pragma: export
#include "search.hpp"        // IWYU pragma: export
#include "analysis.hpp"      // IWYU pragma: export
#include "io.hpp"            // IWYU pragma: export
