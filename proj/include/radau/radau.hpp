#pragma once

#include "radau/analysis.hpp"
#include "radau/augmented.hpp"
#include "radau/error.hpp"
#include "radau/ivp.hpp"
#include "radau/linalg.hpp"
#include "radau/problems.hpp"
#include "radau/solver.hpp"
#include "radau/splitting.hpp"
#include "radau/tableau.hpp"
