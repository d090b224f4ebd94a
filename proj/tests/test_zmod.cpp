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

#include "qsimon/errors.hpp"
#include "qsimon/zmod.hpp"
#include "reference.hpp"

using namespace qsimon;

namespace {

ZVec zv(std::int64_t d, std::vector<Digit> e) { return ZVec(Modulus(d), std::move(e)); }

ZVec to_zvec(std::int64_t d, const ref::Vec &v) { return zv(d, v); }

ref::Vec to_ref(const ZVec &v) { return {v.entries().begin(), v.entries().end()}; }

std::set<ref::Vec> span_of(const std::vector<ZVec> &gens, std::int64_t d, std::size_t n) {
    std::vector<ref::Vec> g;
    for (const auto &x : gens) g.push_back(to_ref(x));
    return ref::closure(g, d, n);
}

std::vector<ZVec> random_set(std::mt19937_64 &rng, std::int64_t d, std::size_t n) {
    std::uniform_int_distribution<int> count(0, 3);
    std::vector<ZVec> out;
    for (int i = count(rng); i > 0; --i) out.push_back(to_zvec(d, ref::random_vec(rng, d, n)));
    return out;
}

template <class F> void expect_kind(ErrorKind kind, F &&f) {
    try {
        f();
        ADD_FAILURE() << "expected " << to_string(kind);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

} // namespace

TEST(Modulus, RangeAndPredicates) {
    EXPECT_THROW(Modulus(1), Error);
    EXPECT_THROW(Modulus(Modulus::kMax + 1), Error);
    EXPECT_TRUE(Modulus(7).is_prime());
    EXPECT_FALSE(Modulus(4).is_prime());
    EXPECT_TRUE(Modulus(8).is_power_of_two());
    EXPECT_FALSE(Modulus(6).is_power_of_two());
}

TEST(ZVec, EntriesMustBeReducedAndIndexRoundTrips) {
    expect_kind(ErrorKind::Domain, [] { (void)zv(4, {5, 1, 2}); });
    expect_kind(ErrorKind::Domain, [] { (void)zv(4, {-1}); });
    expect_kind(ErrorKind::Domain, [] { (void)zv(4, {}); });
    for (std::uint64_t i = 0; i < 64; ++i) {
        EXPECT_EQ(ZVec::from_index(Modulus(4), 3, i).to_index(), i);
        EXPECT_EQ(to_ref(ZVec::from_index(Modulus(4), 3, i)), ref::from_index(4, 3, i));
    }
}

TEST(ZVec, ArithmeticIsComponentwise) {
    const auto a = zv(4, {2, 0, 3, 1});
    const auto b = zv(4, {3, 3, 3, 3});
    EXPECT_EQ(a + b, zv(4, {1, 3, 2, 0}));
    EXPECT_EQ(a - b, zv(4, {3, 1, 0, 2}));
    EXPECT_EQ(-a, zv(4, {2, 0, 1, 3}));
    EXPECT_EQ(a.scaled(3), zv(4, {2, 0, 1, 3}));
    expect_kind(ErrorKind::DimensionMismatch, [&] { (void)(a + zv(4, {1, 2})); });
    expect_kind(ErrorKind::DimensionMismatch, [&] { (void)(a + zv(5, {1, 2, 3, 4})); });
}

TEST(InnerProduct, Examples) {
    EXPECT_EQ(inner_product(zv(4, {0, 0, 0, 0}), zv(4, {2, 0, 3, 1})), 0);
    EXPECT_EQ(inner_product(zv(4, {1, 0, 2, 0}), zv(4, {2, 0, 3, 1})), 0);
    EXPECT_EQ(inner_product(zv(4, {1, 1}), zv(4, {0, 1})), 1);
    expect_kind(ErrorKind::DimensionMismatch,
                [] { (void)inner_product(zv(4, {1, 1}), zv(4, {0, 1, 0})); });
    expect_kind(ErrorKind::DimensionMismatch,
                [] { (void)inner_product(zv(4, {1, 1}), zv(2, {0, 1})); });
}

TEST(InnerProduct, BilinearOnRandomTriples) {
    std::mt19937_64 rng(11);
    for (std::int64_t d : {2, 3, 4, 6, 9}) {
        for (int t = 0; t < 200; ++t) {
            const auto x = to_zvec(d, ref::random_vec(rng, d, 4));
            const auto y = to_zvec(d, ref::random_vec(rng, d, 4));
            const auto z = to_zvec(d, ref::random_vec(rng, d, 4));
            EXPECT_EQ(inner_product(x + z, y), (inner_product(x, y) + inner_product(z, y)) % d);
            EXPECT_EQ(inner_product(x, y), ref::dot(to_ref(x), to_ref(y), d));
        }
    }
}

TEST(InnerProduct, LargeModulusDoesNotOverflow) {
    const std::int64_t d = Modulus::kMax;
    const auto x = zv(d, {d - 1, d - 1, d - 1});
    EXPECT_EQ(inner_product(x, x), 3 % d);
}

TEST(OrderOf, Examples) {
    EXPECT_EQ(order_of(zv(4, {2, 0, 3, 1})), 4);
    EXPECT_EQ(order_of(zv(4, {2, 0})), 2);
    EXPECT_EQ(order_of(zv(4, {0, 1})), 4);
    expect_kind(ErrorKind::DegenerateShift, [] { (void)order_of(zv(4, {0, 0})); });
}

TEST(OrderOf, DividesModulusAndMatchesBruteForce) {
    for (std::int64_t d : {2, 3, 4, 6, 8, 12}) {
        for (const auto &v : ref::all_vectors(d, 2)) {
            if (ref::is_zero(v)) continue;
            const auto k = order_of(to_zvec(d, v));
            EXPECT_EQ(d % k, 0);
            EXPECT_EQ(k, ref::order(v, d));
        }
    }
}

TEST(ExtendConstraints, Examples) {
    ConstraintSet empty(Modulus(2), 2);
    auto r = extend_constraints(empty, zv(2, {0, 0}));
    EXPECT_FALSE(r.was_informative);
    EXPECT_EQ(r.constraints.submodule_size(), 1U);

    r = extend_constraints(empty, zv(2, {1, 0}));
    EXPECT_TRUE(r.was_informative);
    EXPECT_EQ(r.constraints.submodule_size(), 2U);

    auto cs = extend_constraints(ConstraintSet(Modulus(4), 2), zv(4, {2, 0})).constraints;
    EXPECT_EQ(cs.submodule_size(), 2U);
    r = extend_constraints(cs, zv(4, {1, 0}));
    EXPECT_TRUE(r.was_informative);
    EXPECT_EQ(r.constraints.submodule_size(), 4U);
}

TEST(ExtendConstraints, UninformativeIffAlreadyInSpan) {
    std::mt19937_64 rng(5);
    for (std::int64_t d : {2, 3, 4, 6}) {
        for (int t = 0; t < 100; ++t) {
            ConstraintSet cs(Modulus(d), 3);
            std::vector<ZVec> gens;
            for (int i = 0; i < 4; ++i) {
                const auto y = to_zvec(d, ref::random_vec(rng, d, 3));
                const bool inside = span_of(gens, d, 3).contains(to_ref(y));
                auto r = cs.extend(y);
                EXPECT_EQ(r.was_informative, !inside);
                gens.push_back(y);
                cs = std::move(r.constraints);
                EXPECT_EQ(cs.submodule_size(), span_of(gens, d, 3).size());
            }
        }
    }
}

TEST(SubmoduleSize, Examples) {
    EXPECT_EQ(submodule_size({}), 1U);
    const std::vector<ZVec> full{zv(2, {1, 0}), zv(2, {0, 1})};
    EXPECT_EQ(submodule_size(full), 4U);
    const std::vector<ZVec> one{zv(4, {2, 0, 3, 1})};
    EXPECT_EQ(submodule_size(one), 4U);
}

TEST(SubmoduleSize, AgreesWithClosureOnRandomSets) {
    std::mt19937_64 rng(2026);
    for (std::int64_t d : {2, 3, 4, 6, 8, 9}) {
        for (std::size_t n : {1U, 2U, 3U}) {
            for (int t = 0; t < 100; ++t) {
                const auto gens = random_set(rng, d, n);
                const auto expected = span_of(gens, d, n).size();
                EXPECT_EQ(submodule_size(gens), expected);
                EXPECT_EQ(submodule_size_enumerated(Modulus(d), n, gens), expected);
                const auto st = subgroup_structure(Modulus(d), n, gens);
                EXPECT_EQ(st.size(), expected);
                std::uint64_t prod = 1;
                for (auto e : st.elementary_divisors) {
                    EXPECT_GT(e, 1);
                    EXPECT_EQ(d % e, 0);
                    prod *= static_cast<std::uint64_t>(e);
                }
                EXPECT_EQ(prod, expected);
                for (std::size_t i = 1; i < st.elementary_divisors.size(); ++i) {
                    EXPECT_EQ(st.elementary_divisors[i] % st.elementary_divisors[i - 1], 0);
                }
                // The structural generators span the same subgroup.
                EXPECT_EQ(span_of(st.generators, d, n), span_of(gens, d, n));
            }
        }
    }
}

TEST(Annihilator, Examples) {
    const std::vector<ZVec> samples{zv(4, {0, 0}), zv(4, {1, 0}), zv(4, {2, 0}), zv(4, {3, 0})};
    const auto ann = annihilator(Modulus(4), 2, samples);
    EXPECT_EQ(span_of(ann, 4, 2), (std::set<ref::Vec>{{0, 0}, {0, 1}, {0, 2}, {0, 3}}));

    const auto everything = annihilator(Modulus(2), 2, {});
    EXPECT_EQ(span_of(everything, 2, 2).size(), 4U);

    const ref::Vec s{2, 0, 3, 1};
    std::vector<ZVec> perp;
    for (const auto &y : ref::annihilator({s}, 4, 4)) perp.push_back(to_zvec(4, y));
    ASSERT_EQ(perp.size(), 64U);
    const auto back = annihilator(Modulus(4), 4, perp);
    EXPECT_EQ(span_of(back, 4, 4), ref::closure({s}, 4, 4));
    EXPECT_EQ(span_of(back, 4, 4).size(), 4U);
}

TEST(Annihilator, AgreesWithBruteForceOnRandomSets) {
    std::mt19937_64 rng(77);
    for (std::int64_t d : {2, 3, 4, 6, 8}) {
        for (std::size_t n : {1U, 2U, 3U}) {
            for (int t = 0; t < 100; ++t) {
                const auto samples = random_set(rng, d, n);
                std::vector<ref::Vec> rs;
                for (const auto &x : samples) rs.push_back(to_ref(x));
                const auto expected = ref::annihilator(rs, d, n);
                EXPECT_EQ(span_of(annihilator(Modulus(d), n, samples), d, n), expected);
                const auto listed = annihilator_enumerated(Modulus(d), n, samples);
                EXPECT_EQ(std::set<ref::Vec>(span_of(listed, d, n)), expected);
                EXPECT_EQ(listed.size(), expected.size());
            }
        }
    }
}

TEST(Annihilator, DoubleAnnihilatorOfFullOrderShiftIsItsCyclicGroup) {
    std::mt19937_64 rng(3);
    for (std::int64_t d : {2, 3, 4}) {
        for (std::size_t n : {1U, 2U, 3U}) {
            for (int t = 0; t < 20; ++t) {
                const auto s = ref::random_full_order(rng, d, n);
                const std::vector<ZVec> one{to_zvec(d, s)};
                const auto perp = annihilator(Modulus(d), n, one);
                const auto back = annihilator(Modulus(d), n, perp);
                EXPECT_EQ(span_of(back, d, n), ref::closure({s}, d, n));
            }
        }
    }
}

TEST(CanonicalGenerator, Examples) {
    const std::vector<ZVec> col{zv(4, {0, 2}), zv(4, {0, 3})};
    EXPECT_EQ(std::get<ZVec>(canonical_generator(Modulus(4), 2, col)), zv(4, {0, 1}));

    const std::vector<ZVec> diag{zv(2, {1, 1})};
    EXPECT_EQ(std::get<ZVec>(canonical_generator(Modulus(2), 2, diag)), zv(2, {1, 1}));

    const std::vector<ZVec> full{zv(2, {1, 0}), zv(2, {0, 1})};
    const auto nc = canonical_generator(Modulus(2), 2, full);
    ASSERT_TRUE(std::holds_alternative<NotCyclic>(nc));
    EXPECT_EQ(std::get<NotCyclic>(nc).elementary_divisors, (std::vector<std::int64_t>{2, 2}));

    expect_kind(ErrorKind::DegenerateResult,
                [] { (void)canonical_generator(Modulus(4), 2, std::vector<ZVec>{}); });
}

TEST(CanonicalGenerator, ShiftOfTheLargeExample) {
    const ref::Vec s{2, 0, 3, 1};
    const auto expected = ref::canonical(ref::closure({s}, 4, 4), 4);
    ASSERT_TRUE(expected.has_value());
    EXPECT_EQ(*expected, (ref::Vec{2, 0, 1, 3}));
    const std::vector<ZVec> g{zv(4, s)};
    EXPECT_EQ(to_ref(std::get<ZVec>(canonical_generator(Modulus(4), 4, g))), *expected);
}

TEST(CanonicalGenerator, MatchesBruteForceOnRandomSubgroups) {
    std::mt19937_64 rng(19);
    for (std::int64_t d : {2, 3, 4, 6, 8}) {
        for (std::size_t n : {1U, 2U, 3U}) {
            for (int t = 0; t < 60; ++t) {
                auto gens = random_set(rng, d, n);
                const auto h = span_of(gens, d, n);
                if (h.size() == 1) continue;
                const auto expected = ref::canonical(h, d);
                const auto got = canonical_generator(Modulus(d), n, gens);
                if (expected) {
                    ASSERT_TRUE(std::holds_alternative<ZVec>(got));
                    EXPECT_EQ(to_ref(std::get<ZVec>(got)), *expected);
                } else {
                    EXPECT_TRUE(std::holds_alternative<NotCyclic>(got));
                }
            }
        }
    }
}

TEST(EnumerateSubgroup, ListsTheClosureInOrder) {
    const std::vector<ZVec> g{zv(4, {2, 0, 3, 1})};
    const auto elems = enumerate_subgroup(Modulus(4), 4, g);
    std::vector<ref::Vec> got;
    for (const auto &e : elems) got.push_back(to_ref(e));
    const auto expected = ref::closure({{2, 0, 3, 1}}, 4, 4);
    EXPECT_EQ(got, std::vector<ref::Vec>(expected.begin(), expected.end()));
}

TEST(EnumerateSubgroup, RefusesHugeSpaces) {
    const std::vector<ZVec> g{zv(64, {1, 0, 0, 0})};
    EXPECT_THROW((void)annihilator_enumerated(Modulus(64), 4, g), Error);
}

TEST(TextForm, RoundTrips) {
    EXPECT_EQ(to_text(zv(4, {2, 0, 3, 1})), "d4:2031");
    EXPECT_EQ(parse_zvec("d4:2031"), zv(4, {2, 0, 3, 1}));
    EXPECT_EQ(parse_zvec("d2:0101"), zv(2, {0, 1, 0, 1}));
    EXPECT_EQ(to_text(zv(16, {15, 10})), "d16:fa");
    EXPECT_EQ(parse_zvec("d16:FA"), zv(16, {15, 10}));
    EXPECT_EQ(to_text(zv(100, {99, 0, 42})), "d100:99.0.42");
    EXPECT_EQ(parse_zvec("d100:99.0.42"), zv(100, {99, 0, 42}));
    EXPECT_EQ(digits_to_text(zv(4, {2, 0, 3, 1})), "2031");
    EXPECT_EQ(parse_digits(Modulus(3), "120"), zv(3, {1, 2, 0}));
}

TEST(TextForm, RejectsMalformedInput) {
    for (const char *bad : {"", "2031", "d4:", "d4:2041", "d1:0", "x4:11", "d4:2a", "d100:1..2"}) {
        expect_kind(ErrorKind::Parse, [&] { (void)parse_zvec(bad); });
    }
}
