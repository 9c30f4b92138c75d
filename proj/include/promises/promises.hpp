#pragma once

#include "promises/equilibrium.hpp"
#include "promises/lp_oracle.hpp"
#include "promises/model.hpp"
#include "promises/rational.hpp"
#include "promises/selection.hpp"
#include "promises/stability.hpp"
