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

#include "qsimon/oracle.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "qsimon/errors.hpp"

namespace qsimon {

namespace {

std::uint64_t table_size(Modulus m, std::size_t n, std::uint64_t budget) {
    const auto size = checked_power(static_cast<std::uint64_t>(m.value()), n);
    if (size > budget) {
        fail(ErrorKind::Capacity, "oracle table of d^n = " + std::to_string(size) +
                                      " entries exceeds the budget of " +
                                      std::to_string(budget));
    }
    return size;
}

} // namespace

PromiseOracle::PromiseOracle(Modulus modulus, std::size_t n,
                             std::vector<std::uint64_t> table,
                             OracleStructure structure)
    : modulus_(modulus), n_(n), table_(std::move(table)),
      structure_(std::move(structure)) {
    const auto expected = checked_power(static_cast<std::uint64_t>(d()), n);
    if (n == 0 || table_.size() != expected) {
        fail(ErrorKind::ShapeMismatch,
             "oracle table has " + std::to_string(table_.size()) +
                 " entries, expected d^n = " + std::to_string(expected));
    }
    for (auto v : table_) {
        if (v >= expected) {
            fail(ErrorKind::ShapeMismatch,
                 "oracle output index " + std::to_string(v) + " out of range");
        }
    }
    if (const auto *c = std::get_if<CyclicShift>(&structure_)) {
        if (c->shift.modulus() != modulus_ || c->shift.size() != n_) {
            fail(ErrorKind::ShapeMismatch, "cyclic shift does not live in Z_d^n");
        }
    } else {
        const auto &l = std::get<LayeredShift>(structure_);
        if (l.shift.d() != 2 || l.shift.size() != n_) {
            fail(ErrorKind::ShapeMismatch, "layered shift must be binary of length n");
        }
        if (l.layers == 0 || l.layers >= 31 ||
            (std::int64_t{1} << l.layers) != d()) {
            fail(ErrorKind::ShapeMismatch, "layered oracle needs d = 2^l");
        }
    }
}

const ZVec &PromiseOracle::shift() const noexcept {
    return std::visit([](const auto &s) -> const ZVec & { return s.shift; },
                      structure_);
}

ZVec PromiseOracle::evaluate(const ZVec &x) const {
    if (x.modulus() != modulus_ || x.size() != n_) {
        fail(ErrorKind::DimensionMismatch, "input " + to_text(x) +
                                               " is not in the oracle domain");
    }
    return ZVec::from_index(modulus_, n_, table_[x.to_index()]);
}

std::vector<ZVec> PromiseOracle::structural_orbit(const ZVec &x) const {
    std::vector<ZVec> orbit;
    if (const auto *c = std::get_if<CyclicShift>(&structure_)) {
        ZVec y = x;
        for (std::int64_t k = 0; k < d(); ++k) {
            orbit.push_back(y);
            y = y + c->shift;
        }
    } else {
        const auto &l = std::get<LayeredShift>(structure_);
        for (std::uint64_t delta = 0; delta < (std::uint64_t{1} << l.layers);
             ++delta) {
            orbit.push_back(toggle_layers(x, l.shift, delta));
        }
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

bool PromiseOracle::orthogonal_to_shift(const ZVec &y) const {
    if (const auto *c = std::get_if<CyclicShift>(&structure_)) {
        return inner_product(y, c->shift) == 0;
    }
    const auto &l = std::get<LayeredShift>(structure_);
    for (const auto &layer : unpack(y, l.layers)) {
        if (inner_product(layer, l.shift) != 0) {
            return false;
        }
    }
    return true;
}

void PromiseOracle::set_entry(std::uint64_t index, std::uint64_t value) {
    if (index >= table_.size() || value >= table_.size()) {
        fail(ErrorKind::IndexOutOfRange, "oracle entry out of range");
    }
    table_[index] = value;
}

bool PromiseOracle::operator==(const PromiseOracle &rhs) const {
    if (modulus_ != rhs.modulus_ || n_ != rhs.n_ || table_ != rhs.table_ ||
        structure_.index() != rhs.structure_.index()) {
        return false;
    }
    if (is_layered()) {
        const auto &a = std::get<LayeredShift>(structure_);
        const auto &b = std::get<LayeredShift>(rhs.structure_);
        return a.shift == b.shift && a.layers == b.layers;
    }
    return shift() == rhs.shift();
}

BinaryOracle::BinaryOracle(PromiseOracle oracle) : oracle_(std::move(oracle)) {
    if (oracle_.d() != 2 || oracle_.is_layered()) {
        fail(ErrorKind::ShapeMismatch, "a binary oracle needs d = 2 and a cyclic shift");
    }
}

PromiseOracle build_native_oracle(const ZVec &shift, OutputAssignment assignment,
                                  Rng &rng, std::uint64_t budget) {
    const auto ord = order_of(shift);
    if (ord != shift.d()) {
        fail(ErrorKind::UnsupportedShift,
             "shift " + to_text(shift) + " has order " + std::to_string(ord) +
                 " < d; only full-order shifts give a d-to-one oracle");
    }
    const Modulus m = shift.modulus();
    const std::size_t n = shift.size();
    const auto size = table_size(m, n, budget);
    const auto shift_index_digits = shift.entries();
    const auto d = static_cast<std::uint64_t>(m.value());

    // Adding s to a flattened index, digit by digit.
    std::vector<std::uint64_t> place(n);
    for (std::size_t i = n; i-- > 0;) {
        place[i] = (i + 1 == n) ? 1 : place[i + 1] * d;
    }
    auto add_shift = [&](std::uint64_t idx) {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto digit = (idx / place[i]) % d;
            out += ((digit + static_cast<std::uint64_t>(shift_index_digits[i])) % d) *
                   place[i];
        }
        return out;
    };

    constexpr auto kUnassigned = ~std::uint64_t{0};
    std::vector<std::uint64_t> table(size, kUnassigned);
    // Sparse Fisher-Yates over [0, size) for the random injection.
    std::unordered_map<std::uint64_t, std::uint64_t> swapped;
    std::uint64_t drawn = 0;
    auto draw_distinct = [&]() {
        const auto j = drawn + uniform_below(rng, size - drawn);
        auto at = [&](std::uint64_t k) {
            auto it = swapped.find(k);
            return it == swapped.end() ? k : it->second;
        };
        const auto value = at(j);
        swapped[j] = at(drawn);
        ++drawn;
        return value;
    };

    // Ascending index order is lexicographic order, so the first member
    // met in each orbit is its smallest.
    for (std::uint64_t rep = 0; rep < size; ++rep) {
        if (table[rep] != kUnassigned) continue;
        const auto value =
            assignment == OutputAssignment::Canonical ? rep : draw_distinct();
        auto x = rep;
        for (std::uint64_t k = 0; k < d; ++k) {
            table[x] = value;
            x = add_shift(x);
        }
    }
    return PromiseOracle(m, n, std::move(table), CyclicShift{shift});
}

BinaryOracle build_binary_oracle(const ZVec &shift, OutputAssignment assignment,
                                 Rng &rng) {
    if (shift.d() != 2) {
        fail(ErrorKind::Encoding, "binary oracle shift must be over Z_2");
    }
    return BinaryOracle(build_native_oracle(shift, assignment, rng));
}

PromiseReport verify_promise(const PromiseOracle &oracle) {
    const auto size = oracle.domain_size();
    if (size > kEnumerationLimit) {
        fail(ErrorKind::Capacity, "promise verification refused: d^n = " +
                                      std::to_string(size) + " exceeds " +
                                      std::to_string(kEnumerationLimit));
    }
    const Modulus m = oracle.modulus();
    const std::size_t n = oracle.n();
    PromiseReport report;

    // Direction 1: f is constant on every structural orbit.
    for (std::uint64_t i = 0; i < size; ++i) {
        const ZVec x = ZVec::from_index(m, n, i);
        for (const auto &y : oracle.structural_orbit(x)) {
            if (oracle(y.to_index()) != oracle(i)) {
                report.violation = PromiseViolation{
                    x, y, "f differs on two members of the same orbit"};
                return report;
            }
        }
    }

    // Direction 2: equal outputs only within an orbit.
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> fibers;
    for (std::uint64_t i = 0; i < size; ++i) {
        fibers[oracle(i)].push_back(i);
    }
    std::vector<std::uint64_t> outputs;
    outputs.reserve(fibers.size());
    for (const auto &[value, members] : fibers) {
        outputs.push_back(value);
    }
    std::sort(outputs.begin(), outputs.end());
    report.min_fiber_size = size;
    for (auto value : outputs) {
        const auto &members = fibers[value];
        const ZVec first = ZVec::from_index(m, n, members.front());
        const auto orbit = oracle.structural_orbit(first);
        std::unordered_set<std::uint64_t> allowed;
        for (const auto &z : orbit) allowed.insert(z.to_index());
        for (auto idx : members) {
            if (!allowed.contains(idx)) {
                report.violation = PromiseViolation{
                    first, ZVec::from_index(m, n, idx),
                    "f collides outside the orbit"};
                return report;
            }
        }
        report.min_fiber_size = std::min(report.min_fiber_size, members.size());
        report.max_fiber_size = std::max(report.max_fiber_size, members.size());
    }
    report.fiber_count = fibers.size();
    report.passed = true;
    return report;
}

unsigned layer_count(Modulus modulus) {
    if (!modulus.is_power_of_two()) {
        fail(ErrorKind::Encoding, "modulus " + std::to_string(modulus.value()) +
                                      " is not a power of two");
    }
    unsigned l = 0;
    for (auto d = modulus.value(); d > 1; d >>= 1) ++l;
    return l;
}

ZVec pack(std::span<const ZVec> layers) {
    if (layers.empty() || layers.size() >= 31) {
        fail(ErrorKind::Encoding, "pack needs between 1 and 30 layers");
    }
    const std::size_t n = layers.front().size();
    std::vector<Digit> e(n, 0);
    for (std::size_t t = 0; t < layers.size(); ++t) {
        if (layers[t].d() != 2 || layers[t].size() != n) {
            fail(ErrorKind::Encoding, "layer " + std::to_string(t) +
                                          " is not a binary vector of length " +
                                          std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            e[j] += layers[t][j] << t;
        }
    }
    return ZVec(Modulus(std::int64_t{1} << layers.size()), std::move(e));
}

std::vector<ZVec> unpack(const ZVec &eta, unsigned layers) {
    if (layer_count(eta.modulus()) != layers) {
        fail(ErrorKind::Encoding, "modulus " + std::to_string(eta.d()) +
                                      " is not 2^" + std::to_string(layers));
    }
    std::vector<ZVec> out;
    out.reserve(layers);
    for (unsigned t = 0; t < layers; ++t) {
        std::vector<Digit> bits(eta.size());
        for (std::size_t j = 0; j < eta.size(); ++j) {
            bits[j] = (eta[j] >> t) & 1;
        }
        out.emplace_back(Modulus(2), std::move(bits));
    }
    return out;
}

ZVec toggle_layers(const ZVec &eta, const ZVec &binary_shift,
                   std::uint64_t toggles) {
    if (binary_shift.d() != 2 || binary_shift.size() != eta.size()) {
        fail(ErrorKind::DimensionMismatch, "layer toggle needs a binary shift of matching length");
    }
    const auto l = layer_count(eta.modulus());
    const auto mask = static_cast<Digit>(toggles & ((std::uint64_t{1} << l) - 1));
    std::vector<Digit> e(eta.entries().begin(), eta.entries().end());
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (binary_shift[j] != 0) {
            e[j] ^= mask;
        }
    }
    return ZVec(eta.modulus(), std::move(e));
}

PromiseOracle lift_binary_oracle(const BinaryOracle &binary, unsigned layers,
                                 std::uint64_t budget) {
    if (layers == 0 || layers >= 31) {
        fail(ErrorKind::Domain, "layer count must lie in [1, 30]");
    }
    const Modulus m(std::int64_t{1} << layers);
    const std::size_t n = binary.n();
    const auto size = table_size(m, n, budget);
    const auto d = static_cast<std::uint64_t>(m.value());

    std::vector<std::uint64_t> table(size);
    std::vector<std::uint64_t> digits(n);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        auto rest = idx;
        for (std::size_t j = n; j-- > 0;) {
            digits[j] = rest % d;
            rest /= d;
        }
        std::vector<std::uint64_t> out_digits(n, 0);
        for (unsigned t = 0; t < layers; ++t) {
            // Layer t as a binary flattened index, position 0 most significant.
            std::uint64_t layer_index = 0;
            for (std::size_t j = 0; j < n; ++j) {
                layer_index = (layer_index << 1) | ((digits[j] >> t) & 1);
            }
            const auto image = binary(layer_index);
            for (std::size_t j = 0; j < n; ++j) {
                out_digits[j] |= ((image >> (n - 1 - j)) & 1) << t;
            }
        }
        std::uint64_t out = 0;
        for (std::size_t j = 0; j < n; ++j) {
            out = out * d + out_digits[j];
        }
        table[idx] = out;
    }
    return PromiseOracle(m, n, std::move(table),
                         LayeredShift{binary.shift(), layers});
}

std::vector<ZVec> orbit_of(const PromiseOracle &oracle, const ZVec &x) {
    const auto target = oracle.evaluate(x).to_index();
    std::vector<ZVec> out;
    for (std::uint64_t i = 0; i < oracle.domain_size(); ++i) {
        if (oracle(i) == target) {
            out.push_back(ZVec::from_index(oracle.modulus(), oracle.n(), i));
        }
    }
    return out;
}

std::uint64_t image_size(const PromiseOracle &oracle) {
    std::vector<std::uint64_t> values(oracle.table().begin(), oracle.table().end());
    std::sort(values.begin(), values.end());
    return static_cast<std::uint64_t>(
        std::unique(values.begin(), values.end()) - values.begin());
}

} // namespace qsimon
