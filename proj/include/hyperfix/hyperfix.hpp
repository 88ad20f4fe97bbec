#pragma once

// Umbrella header for the fixed-point iteration laboratory.

#include "catalog.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "experiment.hpp"
#include "format.hpp"
#include "iteration.hpp"
#include "mapping.hpp"
#include "point.hpp"
#include "rate.hpp"
#include "rng.hpp"
#include "schedule.hpp"
#include "space.hpp"
