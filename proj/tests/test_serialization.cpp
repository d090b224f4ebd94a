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

#include <gtest/gtest.h>

#include <sstream>

#include "qsimon/errors.hpp"
#include "qsimon/oracle.hpp"
#include "qsimon/serialization.hpp"
#include "qsimon/statevector.hpp"
#include "test_support.hpp"

using namespace qsimon;
using nlohmann::json;
using testing_support::scratch_dir;
using testing_support::slurp;

namespace {

ZVec zv(std::int64_t d, std::vector<Digit> e) { return ZVec(Modulus(d), std::move(e)); }

std::string parse_error_of(const json &j) {
    try {
        (void)oracle_from_json(j);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
        return e.what();
    }
    ADD_FAILURE() << "expected a parse error";
    return {};
}

json small_oracle_json() {
    Rng rng(3);
    return oracle_to_json(build_native_oracle(zv(3, {1, 2}), OutputAssignment::SeededRandom, rng));
}

} // namespace

TEST(ZVecJson, RoundTrip) {
    const auto v = zv(4, {2, 0, 3, 1});
    const auto j = zvec_to_json(v);
    EXPECT_EQ(j, json::parse(R"({"d":4,"entries":[2,0,3,1]})"));
    EXPECT_EQ(zvec_from_json(j), v);
    EXPECT_THROW((void)zvec_from_json(json::parse(R"({"d":4,"entries":[2,5]})")), Error);
    EXPECT_THROW((void)zvec_from_json(json::parse(R"({"entries":[1]})")), Error);
}

TEST(OracleJson, RoundTripsNativeAndLayered) {
    Rng rng(9);
    const auto native = build_native_oracle(zv(4, {2, 0, 3, 1}), OutputAssignment::SeededRandom, rng);
    const auto j = oracle_to_json(native);
    EXPECT_EQ(j["d"], 4);
    EXPECT_EQ(j["n"], 4);
    EXPECT_EQ(j["structure"]["kind"], "cyclic");
    EXPECT_EQ(j["structure"]["s"], "d4:2031");
    EXPECT_EQ(j["table"].size(), 256U);
    EXPECT_EQ(j["table"][5].get<std::string>().size(), 4U);
    EXPECT_TRUE(oracle_from_json(j) == native);

    const auto lifted = lift_binary_oracle(
        build_binary_oracle(zv(2, {0, 1, 0, 1}), OutputAssignment::SeededRandom, rng), 2);
    const auto jl = oracle_to_json(lifted);
    EXPECT_EQ(jl["structure"]["kind"], "layered");
    EXPECT_EQ(jl["structure"]["s"], "d2:0101");
    EXPECT_EQ(jl["structure"]["l"], 2);
    const auto back = oracle_from_json(jl);
    EXPECT_TRUE(back == lifted);
    EXPECT_TRUE(back.is_layered());
}

TEST(OracleJson, ErrorsNameTheField) {
    auto j = small_oracle_json();
    j["table"][4] = "2x";
    EXPECT_NE(parse_error_of(j).find("field 'table[4]'"), std::string::npos);

    j = small_oracle_json();
    j["table"][7] = "1";
    EXPECT_NE(parse_error_of(j).find("field 'table[7]'"), std::string::npos);

    j = small_oracle_json();
    j["structure"]["kind"] = "weird";
    EXPECT_NE(parse_error_of(j).find("field 'structure.kind'"), std::string::npos);

    j = small_oracle_json();
    j.erase("n");
    EXPECT_NE(parse_error_of(j).find("field 'n'"), std::string::npos);

    j = small_oracle_json();
    j["table"].erase(0);
    EXPECT_NE(parse_error_of(j).find("field 'table'"), std::string::npos);

    j = small_oracle_json();
    j["structure"]["s"] = "d3:1";
    EXPECT_NE(parse_error_of(j).find("field 'table'"), std::string::npos);
}

TEST(OracleJson, MalformedTextReportsLineAndColumn) {
    try {
        (void)parse_json_text("{\n  \"d\": 4,\n  \"n\": ]\n}", "bad.json");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
        EXPECT_NE(std::string(e.what()).find("bad.json:3:"), std::string::npos) << e.what();
    }
}

TEST(OracleFile, WriteThenRead) {
    const auto dir = scratch_dir("serialization_file");
    Rng rng(1);
    const auto f = build_native_oracle(zv(2, {1, 0, 1}), OutputAssignment::Canonical, rng);
    write_oracle_file(dir / "o.json", f);
    EXPECT_TRUE(read_oracle_file(dir / "o.json") == f);
    EXPECT_THROW((void)read_oracle_file(dir / "missing.json"), Error);
    write_text_file(dir / "broken.json", "{\"d\": 2,");
    try {
        (void)read_oracle_file(dir / "broken.json");
        FAIL();
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("broken.json:1:"), std::string::npos) << e.what();
    }
    EXPECT_EQ(slurp(dir / "o.json").back(), '\n');
}

TEST(StateDump, AmplitudePairs) {
    const auto s = PureState::zero_state(Modulus(2), 1);
    const auto j = state_to_json(s);
    EXPECT_EQ(j["d"], 2);
    EXPECT_EQ(j["n"], 1);
    ASSERT_EQ(j["amplitudes"].size(), 4U);
    EXPECT_EQ(j["amplitudes"][0], json::array({1.0, 0.0}));
    EXPECT_EQ(j["amplitudes"][3], json::array({0.0, 0.0}));
}

TEST(DistributionCsv, Layout) {
    std::ostringstream out;
    write_distribution_csv(out, {{zv(4, {1, 0}), 0.25}, {zv(4, {3, 0}), 0.75}});
    EXPECT_EQ(out.str(), "outcome_base_d,probability\n10,0.25\n30,0.75\n");
}
