#ifndef FENGAME_FENGAME_HPP_
#define FENGAME_FENGAME_HPP_

#include "fengame/audit.hpp"
#include "fengame/classical.hpp"
#include "fengame/config.hpp"
#include "fengame/core.hpp"
#include "fengame/diagnostics.hpp"
#include "fengame/engine.hpp"
#include "fengame/experiment.hpp"
#include "fengame/learners.hpp"
#include "fengame/problems.hpp"
#include "fengame/rate.hpp"
#include "fengame/schedule.hpp"
#include "fengame/sets.hpp"
#include "fengame/trace.hpp"

#endif  // FENGAME_FENGAME_HPP_
