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

/**
 * @file
 * File formats: vectors and oracles as JSON, state dumps, and CSV
 * distributions.
 *
 * Oracle files look like
 *
 *     {"d": 4, "n": 2,
 *      "structure": {"kind": "cyclic", "s": "d4:01"},
 *      "table": ["00", "00", "00", "00", "10", ...]}
 *
 * where table[i] is f of the input with flattened index i, written as a
 * base-d digit string. Layered oracles use
 * {"kind": "layered", "s": "d2:0101", "l": 2}.
 */

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsimon/oracle.hpp"
#include "qsimon/statevector.hpp"
#include "qsimon/zmod.hpp"

namespace qsimon {

nlohmann::json zvec_to_json(const ZVec &v);
ZVec zvec_from_json(const nlohmann::json &j);

nlohmann::json oracle_to_json(const PromiseOracle &oracle);
/// Throws Parse with the offending field named.
PromiseOracle oracle_from_json(const nlohmann::json &j);

/// Parses JSON text; syntax errors are reported with line and column.
nlohmann::json parse_json_text(const std::string &text, const std::string &source);
nlohmann::json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

PromiseOracle read_oracle_file(const std::filesystem::path &path);
void write_oracle_file(const std::filesystem::path &path, const PromiseOracle &oracle);

/// {d, n, amplitudes: [[re, im], ...]}
nlohmann::json state_to_json(const PureState &state);

/// Rows `outcome_base_d,probability`.
void write_distribution_csv(std::ostream &out,
                            const std::vector<OutcomeProbability> &distribution);

} // namespace qsimon
