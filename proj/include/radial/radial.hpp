#pragma once

// Umbrella header: the whole library in one include.

#include "radial/bounds.hpp"
#include "radial/errors.hpp"
#include "radial/extended_value.hpp"
#include "radial/gamma_result.hpp"
#include "radial/geometry.hpp"
#include "radial/problem.hpp"
#include "radial/problems/ball_sqrt.hpp"
#include "radial/problems/io.hpp"
#include "radial/problems/linear_program.hpp"
#include "radial/problems/piecewise_max.hpp"
#include "radial/solvers.hpp"
#include "radial/trace_csv.hpp"
#include "radial/vec.hpp"
