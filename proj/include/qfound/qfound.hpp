// qfound.hpp
//
// Umbrella header.

#pragma once

#include "qfound/bell.hpp"
#include "qfound/correlations.hpp"
#include "qfound/density.hpp"
#include "qfound/ghz.hpp"
#include "qfound/linalg.hpp"
#include "qfound/mz.hpp"
#include "qfound/random.hpp"
#include "qfound/report.hpp"
#include "qfound/states.hpp"
