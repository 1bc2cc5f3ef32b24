#pragma once

// Umbrella header for the windar toolkit: autoregressive modeling of
// sampled power/sensor series with a constriction-factor particle swarm
// estimator, four classical baseline estimators, AIC order selection and
// the MSE/FPE/NMSE/EMP comparison metrics.

#include "windar/ar_fit.hpp"
#include "windar/ar_model.hpp"
#include "windar/csv.hpp"
#include "windar/errors.hpp"
#include "windar/estimators.hpp"
#include "windar/metrics.hpp"
#include "windar/model_selection.hpp"
#include "windar/pso.hpp"
#include "windar/report_io.hpp"
#include "windar/rng.hpp"
#include "windar/time_series.hpp"
#include "windar/version.hpp"
