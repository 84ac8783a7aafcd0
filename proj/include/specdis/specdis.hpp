#pragma once

#include "specdis/chain_model.hpp"
#include "specdis/error.hpp"
#include "specdis/io.hpp"
#include "specdis/lindblad.hpp"
#include "specdis/parallel.hpp"
#include "specdis/propagator.hpp"
#include "specdis/reduced_state.hpp"
#include "specdis/scenarios.hpp"
#include "specdis/spectral_analysis.hpp"
