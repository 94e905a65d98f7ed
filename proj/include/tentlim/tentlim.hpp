#pragma once

#include "tentlim/errors.hpp"
#include "tentlim/number.hpp"
#include "tentlim/tentmap.hpp"
#include "tentlim/symbolic.hpp"
#include "tentlim/inverse_limit.hpp"
#include "tentlim/ppoints.hpp"
#include "tentlim/chains.hpp"
#include "tentlim/folding.hpp"
#include "tentlim/io.hpp"
