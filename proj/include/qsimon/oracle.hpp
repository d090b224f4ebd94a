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
 * d-to-one promise oracles as dense lookup tables.
 *
 * Two hidden structures are supported. A cyclic oracle has fibers
 * {x + k s : k in Z_d} for a full-order shift s. A layered oracle is lifted
 * from a binary Simon oracle with d = 2^l: an input is split into l binary
 * layers, each layer goes through the binary oracle, and the outputs are
 * packed back, so fibers are the 2^l combinations of toggling s on
 * individual layers.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qsimon/capacity.hpp"
#include "qsimon/random.hpp"
#include "qsimon/zmod.hpp"

namespace qsimon {

struct CyclicShift {
    ZVec shift;
};

struct LayeredShift {
    ZVec shift; ///< binary
    unsigned layers;
};

using OracleStructure = std::variant<CyclicShift, LayeredShift>;

class PromiseOracle {
  public:
    /// `table[i]` is the flattened index of f(x) for the input with
    /// flattened index i. Shape is checked here; the promise itself is not
    /// (see verify_promise).
    PromiseOracle(Modulus modulus, std::size_t n,
                  std::vector<std::uint64_t> table, OracleStructure structure);

    [[nodiscard]] Modulus modulus() const noexcept { return modulus_; }
    [[nodiscard]] std::int64_t d() const noexcept { return modulus_.value(); }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::uint64_t domain_size() const noexcept {
        return table_.size();
    }
    [[nodiscard]] std::span<const std::uint64_t> table() const noexcept {
        return table_;
    }
    [[nodiscard]] const OracleStructure &structure() const noexcept {
        return structure_;
    }
    [[nodiscard]] bool is_layered() const noexcept {
        return std::holds_alternative<LayeredShift>(structure_);
    }
    /// Hidden shift from the metadata; binary for layered oracles.
    [[nodiscard]] const ZVec &shift() const noexcept;

    [[nodiscard]] std::uint64_t operator()(std::uint64_t index) const {
        return table_[index];
    }
    [[nodiscard]] ZVec evaluate(const ZVec &x) const;

    /// The fiber through x predicted by the structure metadata.
    [[nodiscard]] std::vector<ZVec> structural_orbit(const ZVec &x) const;

    /// Whether a measured y is orthogonal to the hidden structure: y.s = 0
    /// mod d for cyclic oracles, every binary layer of y orthogonal to s mod
    /// 2 for layered ones.
    [[nodiscard]] bool orthogonal_to_shift(const ZVec &y) const;

    /// Replaces one table entry; used to build deliberately broken oracles.
    void set_entry(std::uint64_t index, std::uint64_t value);

    bool operator==(const PromiseOracle &) const;

  private:
    Modulus modulus_;
    std::size_t n_;
    std::vector<std::uint64_t> table_;
    OracleStructure structure_;
};

/// A 2-to-one Simon oracle over Z_2^n.
class BinaryOracle {
  public:
    /// Requires d = 2 and cyclic structure.
    explicit BinaryOracle(PromiseOracle oracle);

    [[nodiscard]] std::size_t n() const noexcept { return oracle_.n(); }
    [[nodiscard]] const ZVec &shift() const noexcept { return oracle_.shift(); }
    [[nodiscard]] const PromiseOracle &oracle() const noexcept {
        return oracle_;
    }
    [[nodiscard]] std::uint64_t operator()(std::uint64_t index) const {
        return oracle_(index);
    }

  private:
    PromiseOracle oracle_;
};

enum class OutputAssignment {
    /// Each orbit gets a distinct value drawn at random from Z_d^n.
    SeededRandom,
    /// Each orbit maps to its lexicographically smallest member.
    Canonical,
};

/// Native oracle for the full-order shift s, tabulated orbit by orbit.
/// Throws UnsupportedShift when order_of(s) < d.
PromiseOracle build_native_oracle(const ZVec &shift, OutputAssignment assignment,
                                  Rng &rng,
                                  std::uint64_t budget = default_amplitude_budget());

BinaryOracle build_binary_oracle(const ZVec &shift, OutputAssignment assignment,
                                 Rng &rng);

struct PromiseViolation {
    ZVec x;
    ZVec y;
    std::string reason;
};

struct PromiseReport {
    bool passed = false;
    std::uint64_t fiber_count = 0;
    std::size_t min_fiber_size = 0;
    std::size_t max_fiber_size = 0;
    std::optional<PromiseViolation> violation;
};

/// Exhaustive check of f(x) = f(y) <=> y in orbit(x). Refuses d^n above
/// kEnumerationLimit.
PromiseReport verify_promise(const PromiseOracle &oracle);

/// Number of binary layers l with d = 2^l; Encoding error otherwise.
unsigned layer_count(Modulus modulus);

/// Componentwise sum_t 2^t layers[t] over Z_{2^l}.
ZVec pack(std::span<const ZVec> layers);
/// Binary layers of eta, least significant first.
std::vector<ZVec> unpack(const ZVec &eta, unsigned layers);

/// eta with s XOR-ed into every layer t whose bit is set in `toggles`.
ZVec toggle_layers(const ZVec &eta, const ZVec &binary_shift,
                   std::uint64_t toggles);

PromiseOracle lift_binary_oracle(const BinaryOracle &binary, unsigned layers,
                                 std::uint64_t budget = default_amplitude_budget());

/// Full fiber {y : f(y) = f(x)} read off the table, sorted.
std::vector<ZVec> orbit_of(const PromiseOracle &oracle, const ZVec &x);

/// Size of the image of the table.
std::uint64_t image_size(const PromiseOracle &oracle);

} // namespace qsimon
