// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "wofdm/analysis.hpp"
#include "wofdm/channels.hpp"
#include "wofdm/fft.hpp"
#include "wofdm/link_sim.hpp"
#include "wofdm/matrix_engine.hpp"
#include "wofdm/rng.hpp"
#include "wofdm/stats.hpp"
#include "wofdm/sweep.hpp"
#include "wofdm/sysparams.hpp"
#include "wofdm/version.hpp"
#include "wofdm/windowing.hpp"
