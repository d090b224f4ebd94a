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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsimon::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kCapacity = 2,
    kPromiseViolation = 3,
    kIncompleteConstraints = 4,
};

enum class Mode { Native, Lifted };

struct ExperimentConfig {
    Mode mode = Mode::Native;
    std::optional<std::int64_t> d;
    std::optional<unsigned> layers;
    std::optional<std::size_t> n;
    std::optional<std::string> shift;       ///< e.g. "d4:2031"
    std::optional<std::string> oracle_file; ///< alternative to shift
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::size_t max_runs = 0; ///< 0 selects the default budget
    bool solve = true;
    bool canonical = false;
    std::string out = "qsimon_run";

    /// Checks the field combinations; throws Error(Domain) otherwise.
    void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig &config);
ExperimentConfig config_from_json(const nlohmann::json &j);

/// Runs the command line `args` (without the program name). Never throws;
/// errors are printed to `err` and mapped to an ExitCode.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qsimon::cli
