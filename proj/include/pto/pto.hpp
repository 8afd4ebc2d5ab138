#pragma once

#include "pto/belief.hpp"
#include "pto/geometry.hpp"
#include "pto/environment.hpp"
#include "pto/samplers.hpp"
#include "pto/random_graph.hpp"
#include "pto/belief_graph.hpp"
#include "pto/expected_costs.hpp"
#include "pto/path_tree.hpp"
#include "pto/simplify.hpp"
#include "pto/validate.hpp"
#include "pto/planner.hpp"
#include "pto/benchmark.hpp"
#include "pto/io.hpp"
#include "pto/svg.hpp"
