// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "subweibull/apps.hpp"
#include "subweibull/bounds.hpp"
#include "subweibull/calibration.hpp"
#include "subweibull/dists.hpp"
#include "subweibull/error.hpp"
#include "subweibull/expr.hpp"
#include "subweibull/harness.hpp"
#include "subweibull/orlicz.hpp"
#include "subweibull/profile.hpp"
#include "subweibull/quadrature.hpp"
#include "subweibull/rng.hpp"
#include "subweibull/sigma_l.hpp"
#include "subweibull/version.hpp"
