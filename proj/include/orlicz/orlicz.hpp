#pragma once

// Umbrella header for the Orlicz convex-geometry toolkit.

#include "orlicz/geometry.hpp"
#include "orlicz/grids.hpp"
#include "orlicz/io.hpp"
#include "orlicz/laws.hpp"
#include "orlicz/operators.hpp"
#include "orlicz/phi.hpp"
#include "orlicz/polytope.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/support_body.hpp"
#include "orlicz/tolerances.hpp"
