#pragma once

#include "pgap/analysis.hpp"
#include "pgap/error.hpp"
#include "pgap/gap_census.hpp"
#include "pgap/moments.hpp"
#include "pgap/series.hpp"
#include "pgap/sieve.hpp"
#include "pgap/singular_series.hpp"
#include "pgap/special_fn.hpp"
