#pragma once

#include "rnm/atomic_space.hpp"
#include "rnm/axiom_suite.hpp"
#include "rnm/concatenation.hpp"
#include "rnm/convex_body.hpp"
#include "rnm/core.hpp"
#include "rnm/helly.hpp"
#include "rnm/l0_scalar.hpp"
#include "rnm/random_conjugate.hpp"
#include "rnm/rn_element.hpp"
#include "rnm/sampling.hpp"
#include "rnm/separation.hpp"
#include "rnm/stratification.hpp"
#include "rnm/weak_star.hpp"
