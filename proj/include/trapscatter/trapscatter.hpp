#pragma once

#include "trapscatter/anti_trapped.hpp"
#include "trapscatter/core.hpp"
#include "trapscatter/equal_trap.hpp"
#include "trapscatter/errors.hpp"
#include "trapscatter/fock.hpp"
#include "trapscatter/free_excited.hpp"
#include "trapscatter/momentum.hpp"
#include "trapscatter/numerics/fit.hpp"
#include "trapscatter/numerics/quadrature.hpp"
#include "trapscatter/numerics/special.hpp"
#include "trapscatter/propagator.hpp"
#include "trapscatter/sweep.hpp"
#include "trapscatter/version.hpp"
