#pragma once

#include "steklov/bench.hpp"
#include "steklov/error.hpp"
#include "steklov/fixtures.hpp"
#include "steklov/ivp.hpp"
#include "steklov/objective.hpp"
#include "steklov/oracle.hpp"
#include "steklov/polynomial.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/regularize.hpp"
#include "steklov/trajectories.hpp"
