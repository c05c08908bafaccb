#pragma once

#include "bertini.hpp"
#include "charideal.hpp"
#include "coefficient_maps.hpp"
#include "coefficients.hpp"
#include "dimension.hpp"
#include "errors.hpp"
#include "groebner.hpp"
#include "ideal.hpp"
#include "ideal_ops.hpp"
#include "module.hpp"
#include "monomial.hpp"
#include "padic.hpp"
#include "parallel.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "ring.hpp"
#include "syzygy.hpp"
