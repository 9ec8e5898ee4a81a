#pragma once

#include "pcf/error.hpp"
#include "pcf/rational.hpp"
#include "pcf/poly.hpp"
#include "pcf/factor.hpp"
#include "pcf/ratfunc.hpp"
#include "pcf/quadsurd.hpp"
#include "pcf/parse.hpp"
#include "pcf/mobius.hpp"
#include "pcf/euler.hpp"
#include "pcf/identify.hpp"
#include "pcf/limits.hpp"
#include "pcf/matforms.hpp"
