// Copyright 2026 The qsimon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace qsimon {

/// Default ceiling on dense vector lengths: statevector amplitudes and
/// oracle lookup tables.
inline constexpr std::uint64_t kDefaultAmplitudeBudget = std::uint64_t{1} << 26;

/// kDefaultAmplitudeBudget, unless QSIMON_MAX_AMPLITUDES holds a positive
/// integer.
std::uint64_t default_amplitude_budget();

} // namespace qsimon
