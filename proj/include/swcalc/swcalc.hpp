#pragma once

#include "swcalc/algebra.hpp"
#include "swcalc/chern.hpp"
#include "swcalc/clifford.hpp"
#include "swcalc/errors.hpp"
#include "swcalc/io.hpp"
#include "swcalc/linsolve.hpp"
#include "swcalc/manifold.hpp"
#include "swcalc/neck.hpp"
#include "swcalc/numeric.hpp"
#include "swcalc/report.hpp"
#include "swcalc/scenarios.hpp"
#include "swcalc/selftest.hpp"
#include "swcalc/sw.hpp"
