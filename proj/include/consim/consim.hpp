#pragma once

// Umbrella header.

#include "consim/config.hpp"
#include "consim/csv.hpp"
#include "consim/dynamics.hpp"
#include "consim/errors.hpp"
#include "consim/experiment.hpp"
#include "consim/generators.hpp"
#include "consim/graph.hpp"
#include "consim/metrics.hpp"
#include "consim/rng.hpp"
#include "consim/stats.hpp"
#include "consim/version.hpp"
