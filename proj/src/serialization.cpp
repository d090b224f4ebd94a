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

#include "qsimon/serialization.hpp"

#include <fstream>
#include <sstream>

#include "qsimon/errors.hpp"
#include "qsimon/format.hpp"

namespace qsimon {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string &field, const std::string &why) {
    fail(ErrorKind::Parse, "field '" + field + "': " + why);
}

const json &require(const json &j, const char *key, const std::string &context) {
    if (!j.is_object() || !j.contains(key)) {
        field_error(context + key, "missing");
    }
    return j.at(key);
}

std::int64_t require_int(const json &j, const char *key, const std::string &context) {
    const auto &v = require(j, key, context);
    if (!v.is_number_integer()) field_error(context + key, "expected an integer");
    return v.get<std::int64_t>();
}

std::string require_string(const json &j, const char *key, const std::string &context) {
    const auto &v = require(j, key, context);
    if (!v.is_string()) field_error(context + key, "expected a string");
    return v.get<std::string>();
}

template <typename F>
auto with_field(const std::string &field, F &&f) {
    try {
        return f();
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::Parse && std::string(e.what()).starts_with("field '")) {
            throw;
        }
        field_error(field, e.what());
    }
}

} // namespace

json zvec_to_json(const ZVec &v) {
    return json{{"d", v.d()}, {"entries", std::vector<Digit>(v.entries().begin(), v.entries().end())}};
}

ZVec zvec_from_json(const json &j) {
    const auto d = require_int(j, "d", "");
    const auto &entries = require(j, "entries", "");
    if (!entries.is_array()) field_error("entries", "expected an array");
    std::vector<Digit> e;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!entries[i].is_number_integer()) {
            field_error("entries[" + std::to_string(i) + "]", "expected an integer");
        }
        e.push_back(entries[i].get<Digit>());
    }
    return with_field("entries", [&] { return ZVec(Modulus(d), std::move(e)); });
}

json oracle_to_json(const PromiseOracle &oracle) {
    json structure;
    if (const auto *l = std::get_if<LayeredShift>(&oracle.structure())) {
        structure = {{"kind", "layered"}, {"s", to_text(l->shift)}, {"l", l->layers}};
    } else {
        structure = {{"kind", "cyclic"}, {"s", to_text(oracle.shift())}};
    }
    json table = json::array();
    for (auto v : oracle.table()) {
        table.push_back(digits_to_text(ZVec::from_index(oracle.modulus(), oracle.n(), v)));
    }
    return json{{"d", oracle.d()}, {"n", oracle.n()}, {"structure", structure}, {"table", table}};
}

PromiseOracle oracle_from_json(const json &j) {
    const auto d = require_int(j, "d", "");
    const auto n = require_int(j, "n", "");
    const Modulus m = with_field("d", [&] { return Modulus(d); });
    if (n < 1) field_error("n", "must be at least 1");

    const auto &st = require(j, "structure", "");
    const auto kind = require_string(st, "kind", "structure.");
    const auto shift_text = require_string(st, "s", "structure.");
    ZVec shift = with_field("structure.s", [&] { return parse_zvec(shift_text); });
    OracleStructure structure = CyclicShift{shift};
    if (kind == "layered") {
        const auto l = require_int(st, "l", "structure.");
        if (l < 1 || l > 30) field_error("structure.l", "must lie in [1, 30]");
        structure = LayeredShift{shift, static_cast<unsigned>(l)};
    } else if (kind != "cyclic") {
        field_error("structure.kind", "expected 'cyclic' or 'layered', got '" + kind + "'");
    }

    const auto &table = require(j, "table", "");
    if (!table.is_array()) field_error("table", "expected an array");
    std::vector<std::uint64_t> values;
    values.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto field = "table[" + std::to_string(i) + "]";
        if (!table[i].is_string()) field_error(field, "expected a digit string");
        const auto text = table[i].get<std::string>();
        const ZVec v = with_field(field, [&] { return parse_digits(m, text); });
        if (v.size() != static_cast<std::size_t>(n)) {
            field_error(field, "expected " + std::to_string(n) + " digits");
        }
        values.push_back(v.to_index());
    }
    return with_field("table", [&] {
        return PromiseOracle(m, static_cast<std::size_t>(n), std::move(values), std::move(structure));
    });
}

json parse_json_text(const std::string &text, const std::string &source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t line = 1, col = 1;
        const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(ErrorKind::Parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                   ": malformed JSON (" + e.what() + ")");
    }
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Parse, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path.string());
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorKind::Parse, "cannot write " + path.string());
    }
    out << text;
}

PromiseOracle read_oracle_file(const std::filesystem::path &path) {
    const auto j = read_json_file(path);
    try {
        return oracle_from_json(j);
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::Parse) throw;
        fail(ErrorKind::Parse, path.string() + ": " + e.what());
    }
}

void write_oracle_file(const std::filesystem::path &path, const PromiseOracle &oracle) {
    write_text_file(path, oracle_to_json(oracle).dump() + "\n");
}

json state_to_json(const PureState &state) {
    json amps = json::array();
    for (const auto &a : state.amplitudes()) {
        amps.push_back(json::array({a.real(), a.imag()}));
    }
    return json{{"d", state.d()}, {"n", state.sites_per_register()}, {"amplitudes", amps}};
}

void write_distribution_csv(std::ostream &out,
                            const std::vector<OutcomeProbability> &distribution) {
    out << "outcome_base_d,probability\n";
    for (const auto &row : distribution) {
        out << digits_to_text(row.outcome) << ',' << format_real(row.probability)
            << '\n';
    }
}

} // namespace qsimon
