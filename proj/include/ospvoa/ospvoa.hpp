#pragma once

#include "ospvoa/errors.hpp"
#include "ospvoa/rational.hpp"
#include "ospvoa/numeric.hpp"
#include "ospvoa/qseries.hpp"
#include "ospvoa/wqseries.hpp"
#include "ospvoa/theta.hpp"
#include "ospvoa/levels.hpp"
#include "ospvoa/characters.hpp"
#include "ospvoa/fusion.hpp"
#include "ospvoa/modular.hpp"
#include "ospvoa/coset.hpp"
#include "ospvoa/selftest.hpp"
#include "ospvoa/json_io.hpp"
