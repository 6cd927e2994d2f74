#pragma once

#include "minimax/backtracking.hpp"
#include "minimax/error.hpp"
#include "minimax/problem.hpp"
#include "minimax/problems.hpp"
#include "minimax/projections.hpp"
#include "minimax/solvers.hpp"
