#pragma once

// Umbrella header for the whole library.

#include "recset/bitset.hpp"
#include "recset/common.hpp"
#include "recset/counting.hpp"
#include "recset/doubling.hpp"
#include "recset/ffield.hpp"
#include "recset/irreducibility.hpp"
#include "recset/poly.hpp"
#include "recset/polygon.hpp"
#include "recset/recurrence.hpp"
#include "recset/sweep.hpp"
