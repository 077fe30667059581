#pragma once

// Umbrella header for the whole library.

#include "cardgroup/cards.hpp"
#include "cardgroup/constraint_file.hpp"
#include "cardgroup/errors.hpp"
#include "cardgroup/experiments.hpp"
#include "cardgroup/grouping.hpp"
#include "cardgroup/oracle.hpp"
#include "cardgroup/permutation.hpp"
#include "cardgroup/protocols.hpp"
#include "cardgroup/rng.hpp"
#include "cardgroup/stats.hpp"
#include "cardgroup/table.hpp"
