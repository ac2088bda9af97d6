#pragma once

#include "semtrack/error.hpp"
#include "semtrack/joint_chain.hpp"
#include "semtrack/metrics.hpp"
#include "semtrack/optimizer.hpp"
#include "semtrack/params.hpp"
#include "semtrack/remarks.hpp"
#include "semtrack/sim.hpp"
#include "semtrack/stationary.hpp"
