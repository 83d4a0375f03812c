#pragma once

// Umbrella header for the whole library.

#include "ordpat/changepoint.hpp"
#include "ordpat/errors.hpp"
#include "ordpat/hypotest.hpp"
#include "ordpat/io.hpp"
#include "ordpat/models.hpp"
#include "ordpat/ordstats.hpp"
#include "ordpat/patterns.hpp"
#include "ordpat/rng.hpp"
#include "ordpat/series.hpp"
#include "ordpat/version.hpp"
