// Copyright 2026 The pidtune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "pidtune/lti.hpp"

#include <string>
#include <string_view>

namespace pidtune {

// 1/(s+1)^3, the default plant.
inline constexpr std::string_view kBenchmark3Preset = "benchmark3";

// Accepts a preset name or "num: c_n ... c_0 / den: d_m ... d_0" with
// whitespace-separated decimal coefficients, highest degree first.
// Throws Error(Parse) naming the offending token and its 1-based column;
// throws Error(ImproperSystem) for an improper ratio.
TransferFunction parse_plant(std::string_view text);

// Inverse of parse_plant for the coefficient form; shortest round-trip decimals.
std::string format_plant(const TransferFunction& tf);

// Shortest decimal that reads back to the same double.
std::string format_shortest(double v);
// Decimal with 17 significant digits.
std::string format_17g(double v);

}  // namespace pidtune
