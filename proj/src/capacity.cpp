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

#include "qsimon/capacity.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace qsimon {

std::uint64_t default_amplitude_budget() {
    const char *env = std::getenv("QSIMON_MAX_AMPLITUDES");
    if (env == nullptr) {
        return kDefaultAmplitudeBudget;
    }
    const std::string_view text(env);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
        return kDefaultAmplitudeBudget;
    }
    return value;
}

} // namespace qsimon
