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
 * Exact arithmetic over Z_d and Z_d^n.
 *
 * Subgroups of Z_d^n are handled through a Smith-style diagonalization of
 * the generator matrix with entries kept reduced mod d. Each operation that
 * is cheap to brute force for small d^n also has an `_enumerated` twin that
 * walks the group explicitly; the two are cross-checked in the tests.
 */

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qsimon {

using Digit = std::int64_t;

class Modulus {
  public:
    /// Largest supported modulus; products of two residues fit in 64 bits
    /// after widening.
    static constexpr std::int64_t kMax = (std::int64_t{1} << 31) - 1;

    explicit Modulus(std::int64_t d);

    [[nodiscard]] std::int64_t value() const noexcept { return d_; }
    [[nodiscard]] bool is_prime() const noexcept;
    [[nodiscard]] bool is_power_of_two() const noexcept {
        return (d_ & (d_ - 1)) == 0;
    }

    auto operator<=>(const Modulus &) const = default;

  private:
    std::int64_t d_;
};

/// A length-n vector over Z_d. Entries are always reduced into [0, d).
class ZVec {
  public:
    ZVec(Modulus modulus, std::vector<Digit> entries);

    static ZVec zero(Modulus modulus, std::size_t n);
    /// Inverse of to_index(): site 0 is the most significant base-d digit.
    static ZVec from_index(Modulus modulus, std::size_t n, std::uint64_t index);

    [[nodiscard]] Modulus modulus() const noexcept { return modulus_; }
    [[nodiscard]] std::int64_t d() const noexcept { return modulus_.value(); }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] Digit operator[](std::size_t i) const { return entries_[i]; }
    [[nodiscard]] std::span<const Digit> entries() const noexcept {
        return entries_;
    }

    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] std::uint64_t to_index() const;

    [[nodiscard]] ZVec operator+(const ZVec &rhs) const;
    [[nodiscard]] ZVec operator-(const ZVec &rhs) const;
    [[nodiscard]] ZVec operator-() const;
    [[nodiscard]] ZVec scaled(std::int64_t k) const;

    bool operator==(const ZVec &) const = default;
    /// Lexicographic on (modulus, entries).
    std::strong_ordering operator<=>(const ZVec &rhs) const;

  private:
    Modulus modulus_;
    std::vector<Digit> entries_;
};

/// d^n, or a Domain error when it does not fit in 64 bits.
std::uint64_t checked_power(std::uint64_t base, std::size_t exponent);

Digit inner_product(const ZVec &x, const ZVec &y);

/// Least k >= 1 with k*s = 0. Throws DegenerateShift on the zero vector.
std::int64_t order_of(const ZVec &s);

/// Decomposition of the subgroup generated by a set of vectors.
struct SubgroupStructure {
    /// Orders of the nontrivial cyclic factors, each dividing the next.
    std::vector<std::int64_t> elementary_divisors;
    /// Elements generating the subgroup as a direct sum; generators[i] has
    /// order orders[i]. Not canonical.
    std::vector<ZVec> generators;
    std::vector<std::int64_t> orders;

    [[nodiscard]] std::uint64_t size() const;
    [[nodiscard]] bool is_cyclic() const noexcept {
        return elementary_divisors.size() <= 1;
    }
};

SubgroupStructure subgroup_structure(Modulus modulus, std::size_t n,
                                     std::span<const ZVec> generators);

/// Cardinality of the generated subgroup; 1 for an empty list.
std::uint64_t submodule_size(std::span<const ZVec> generators);

/// Generators of {s : y.s = 0 mod d for every sample y}.
std::vector<ZVec> annihilator(Modulus modulus, std::size_t n,
                              std::span<const ZVec> samples);

struct NotCyclic {
    std::vector<std::int64_t> elementary_divisors;
};

/// Lexicographically smallest generator of a cyclic subgroup, or the
/// subgroup's elementary divisors when it is not cyclic. Throws
/// DegenerateResult for the trivial subgroup.
std::variant<ZVec, NotCyclic>
canonical_generator(Modulus modulus, std::size_t n,
                    std::span<const ZVec> generators);

// Brute-force paths. These refuse groups with d^n above kEnumerationLimit.

inline constexpr std::uint64_t kEnumerationLimit = 1'000'000;

/// Every element of the generated subgroup, sorted.
std::vector<ZVec> enumerate_subgroup(Modulus modulus, std::size_t n,
                                     std::span<const ZVec> generators);
std::uint64_t submodule_size_enumerated(Modulus modulus, std::size_t n,
                                        std::span<const ZVec> generators);
/// Every element of the annihilator, sorted.
std::vector<ZVec> annihilator_enumerated(Modulus modulus, std::size_t n,
                                         std::span<const ZVec> samples);

/// Measurement samples y collected towards recovering a hidden shift.
class ConstraintSet {
  public:
    ConstraintSet(Modulus modulus, std::size_t n);

    [[nodiscard]] Modulus modulus() const noexcept { return modulus_; }
    [[nodiscard]] std::size_t length() const noexcept { return n_; }
    [[nodiscard]] const std::vector<ZVec> &samples() const noexcept {
        return samples_;
    }
    /// Size of the subgroup of Z_d^n generated by the samples.
    [[nodiscard]] std::uint64_t submodule_size() const noexcept {
        return size_;
    }

    struct Extended;
    /// Adds y. The flag is set iff the generated subgroup strictly grew.
    [[nodiscard]] Extended extend(const ZVec &y) const;

  private:
    Modulus modulus_;
    std::size_t n_;
    std::vector<ZVec> samples_;
    std::uint64_t size_ = 1;
};

struct ConstraintSet::Extended {
    ConstraintSet constraints;
    bool was_informative;
};

inline ConstraintSet::Extended extend_constraints(const ConstraintSet &cs,
                                                  const ZVec &y) {
    return cs.extend(y);
}

// Text form: "d4:2031". Moduli above 36 use dot-separated decimal digits,
// e.g. "d100:3.45.0".
std::string to_text(const ZVec &v);
ZVec parse_zvec(std::string_view text);

/// Digit string without the "dN:" prefix.
std::string digits_to_text(const ZVec &v);
ZVec parse_digits(Modulus modulus, std::string_view digits);

} // namespace qsimon
