#pragma once

#include "transit_measure/core.hpp"
#include "transit_measure/instance.hpp"
#include "transit_measure/lineplan_logit.hpp"
#include "transit_measure/lineplan_sp.hpp"
#include "transit_measure/numeric.hpp"
#include "transit_measure/oracles.hpp"
#include "transit_measure/routeset_measures.hpp"
#include "transit_measure/timetable_measures.hpp"
