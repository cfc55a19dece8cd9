#pragma once

#include "tmt/core_model.hpp"
#include "tmt/cost_accounting.hpp"
#include "tmt/demand_policy.hpp"
#include "tmt/simulation.hpp"
#include "tmt/switch_dynamics.hpp"
#include "tmt/traffic_gen.hpp"
