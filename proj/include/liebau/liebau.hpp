#pragma once

/// Umbrella header.

#include "liebau/error.hpp"
#include "liebau/numeric.hpp"
#include "liebau/funcspec.hpp"
#include "liebau/greens.hpp"
#include "liebau/problem.hpp"
#include "liebau/certify.hpp"
#include "liebau/spectral.hpp"
#include "liebau/solve.hpp"
#include "liebau/pump.hpp"
#include "liebau/json_out.hpp"
#include "liebau/config.hpp"
