#pragma once

#include "horizonsel/error.hpp"
#include "horizonsel/numeric.hpp"
#include "horizonsel/series.hpp"
#include "horizonsel/metrics.hpp"
#include "horizonsel/mdfh.hpp"
#include "horizonsel/forecasters.hpp"
#include "horizonsel/pareto.hpp"
#include "horizonsel/selectors.hpp"
#include "horizonsel/stats.hpp"
#include "horizonsel/pipeline.hpp"
#include "horizonsel/synthetic.hpp"
