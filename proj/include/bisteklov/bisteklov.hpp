#pragma once

#include "bisteklov/errors.hpp"
#include "bisteklov/specfun.hpp"
#include "bisteklov/harmonics.hpp"
#include "bisteklov/roots.hpp"
#include "bisteklov/ball_spectrum.hpp"
#include "bisteklov/radial_solver.hpp"
#include "bisteklov/rayleigh.hpp"
#include "bisteklov/geometry_iso.hpp"
#include "bisteklov/hadamard.hpp"
