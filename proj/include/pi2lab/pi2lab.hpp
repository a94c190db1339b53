#pragma once

#define PI2LAB_VERSION "0.1.0"

#include "pi2lab/aqm_pi2.hpp"
#include "pi2lab/cc_models.hpp"
#include "pi2lab/errors.hpp"
#include "pi2lab/geometry.hpp"
#include "pi2lab/rational.hpp"
#include "pi2lab/rtt_dataset.hpp"
#include "pi2lab/scenario_io.hpp"
#include "pi2lab/sim_engine.hpp"
#include "pi2lab/target_calculator.hpp"
#include "pi2lab/units.hpp"
