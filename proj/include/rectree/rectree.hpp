#pragma once

#include "couplings.hpp"
#include "enumerate.hpp"
#include "generators.hpp"
#include "harness.hpp"
#include "oracles.hpp"
#include "perm.hpp"
#include "rng.hpp"
#include "shuffle.hpp"
#include "stats.hpp"
#include "tree.hpp"
#include "weights.hpp"
