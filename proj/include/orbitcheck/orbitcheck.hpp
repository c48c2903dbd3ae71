#pragma once

#include "orbitcheck/csv.hpp"
#include "orbitcheck/errors.hpp"
#include "orbitcheck/intermittency.hpp"
#include "orbitcheck/lbe.hpp"
#include "orbitcheck/map.hpp"
#include "orbitcheck/oracle.hpp"
#include "orbitcheck/rational.hpp"
#include "orbitcheck/scenario.hpp"
#include "orbitcheck/svg.hpp"
