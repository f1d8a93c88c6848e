#pragma once

// Umbrella header.

#include "rankdep/association.hpp"
#include "rankdep/cg_estimator.hpp"
#include "rankdep/copula.hpp"
#include "rankdep/empirical_copula.hpp"
#include "rankdep/errors.hpp"
#include "rankdep/io.hpp"
#include "rankdep/mc_engine.hpp"
#include "rankdep/quantile_table.hpp"
#include "rankdep/quantiles.hpp"
#include "rankdep/ranks.hpp"
#include "rankdep/rng.hpp"
#include "rankdep/sample.hpp"
#include "rankdep/spectral.hpp"
#include "rankdep/student_t.hpp"
#include "rankdep/test_stats.hpp"
