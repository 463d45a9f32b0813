#pragma once

#include "steerkit/errors.hpp"
#include "steerkit/evolution.hpp"
#include "steerkit/generators.hpp"
#include "steerkit/moments.hpp"
#include "steerkit/output_spectra.hpp"
#include "steerkit/params.hpp"
#include "steerkit/regimes.hpp"
#include "steerkit/squeezed_frame.hpp"
#include "steerkit/steady_state.hpp"
#include "steerkit/steering.hpp"
#include "steerkit/sweep.hpp"
