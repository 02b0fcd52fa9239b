#pragma once

#include "hadamard/bounds.hpp"
#include "hadamard/convexity.hpp"
#include "hadamard/core.hpp"
#include "hadamard/cubature.hpp"
#include "hadamard/dual.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/expr.hpp"
#include "hadamard/quadrature.hpp"
