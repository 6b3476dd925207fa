#pragma once

// Umbrella header: the whole solver library.

#include "basis.hpp"       // hat bases, node sequences, index bijections
#include "bounds.hpp"      // contraction constants and error bounds
#include "config.hpp"      // key-value problem descriptions
#include "exprlang.hpp"    // the expression language
#include "interp.hpp"      // grid functions and hierarchical coefficients
#include "problems.hpp"    // bundled benchmark problems
#include "quadrature.hpp"  // composite Gauss-Legendre rules
#include "report.hpp"      // report assembly and serialization
#include "volterra.hpp"    // problem type, exact operator, projected stages
