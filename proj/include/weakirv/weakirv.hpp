#pragma once

#include "weakirv/axioms.hpp"
#include "weakirv/ballotio.hpp"
#include "weakirv/candidate_set.hpp"
#include "weakirv/experiment.hpp"
#include "weakirv/marks.hpp"
#include "weakirv/profile.hpp"
#include "weakirv/rational.hpp"
#include "weakirv/report.hpp"
#include "weakirv/rules.hpp"
#include "weakirv/scoring.hpp"
#include "weakirv/search.hpp"
#include "weakirv/stv.hpp"
#include "weakirv/synth.hpp"
#include "weakirv/weak_order.hpp"
