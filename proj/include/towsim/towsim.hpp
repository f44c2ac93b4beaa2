// Umbrella header.
#pragma once

#include "csv.hpp"
#include "dynamics.hpp"
#include "hydro.hpp"
#include "model.hpp"
#include "numerics.hpp"
#include "scenario.hpp"
#include "shiptrack.hpp"
#include "simulation.hpp"
#include "statics.hpp"
