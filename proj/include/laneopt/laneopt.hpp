#pragma once

#include "laneopt/allocation.hpp"
#include "laneopt/errors.hpp"
#include "laneopt/headway.hpp"
#include "laneopt/published_ranges.hpp"
#include "laneopt/ring.hpp"
#include "laneopt/sweep.hpp"
