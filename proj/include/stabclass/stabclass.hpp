#pragma once

// Umbrella header: exact arithmetic, dimension constants, hyperbolic form
// machinery, manifold classification, spin-c structures.

#include "bernoulli.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "forms.hpp"
#include "jdata.hpp"
#include "manifolds.hpp"
#include "numeric.hpp"
#include "spinc.hpp"
