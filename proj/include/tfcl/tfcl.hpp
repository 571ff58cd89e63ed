#pragma once

// Umbrella header for the thin-film contact-line laboratory.

#include "tfcl/banded.hpp"
#include "tfcl/beta_field.hpp"
#include "tfcl/exponents.hpp"
#include "tfcl/fd.hpp"
#include "tfcl/fit.hpp"
#include "tfcl/grid.hpp"
#include "tfcl/hodograph.hpp"
#include "tfcl/linear_solver.hpp"
#include "tfcl/multilinear.hpp"
#include "tfcl/nonlinear_solver.hpp"
#include "tfcl/norms.hpp"
#include "tfcl/parabolic_norms.hpp"
#include "tfcl/polynomial.hpp"
#include "tfcl/random_fields.hpp"
#include "tfcl/rational.hpp"
#include "tfcl/schedule.hpp"
#include "tfcl/series.hpp"
#include "tfcl/trajectory.hpp"
#include "tfcl/weights.hpp"
