// Copyright 2026 The subweibull Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace subweibull {

inline constexpr const char* tool_version = "0.1.0";

}  // namespace subweibull
