#pragma once

#include "hypertoric/numeric.hpp"
#include "hypertoric/exact_linalg.hpp"
#include "hypertoric/exact_lp.hpp"
#include "hypertoric/torus_model.hpp"
#include "hypertoric/arrangement.hpp"
#include "hypertoric/topology.hpp"
#include "hypertoric/git_stability.hpp"
#include "hypertoric/wallcross.hpp"
