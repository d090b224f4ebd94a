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

#include "qsimon/statevector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>

#include "qsimon/errors.hpp"

namespace qsimon {

namespace {

constexpr double kNormTolerance = 1e-6;
constexpr double kPruneBelow = 1e-12;

} // namespace

std::vector<Complex> qft_matrix(std::int64_t d, bool inverse) {
    const auto dim = static_cast<std::size_t>(d);
    std::vector<Complex> m(dim * dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    const double sign = inverse ? -1.0 : 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < dim; ++k) {
            // Reduce the exponent first so the angle stays small and exact
            // for the usual d.
            const auto e = (j * k) % dim;
            const double angle =
                sign * 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(d);
            m[j * dim + k] = std::polar(scale, angle);
        }
    }
    // Pin the quarter-turn entries so that e.g. QFT_4 has exact 0 and +-1.
    for (auto &z : m) {
        if (std::abs(z.real()) < 1e-15) z.real(0.0);
        if (std::abs(z.imag()) < 1e-15) z.imag(0.0);
    }
    return m;
}

std::vector<Complex> layer_hadamard_matrix(std::int64_t d) {
    if (d < 2 || (d & (d - 1)) != 0) {
        fail(ErrorKind::Encoding, "layerwise Hadamard needs d = 2^l");
    }
    const auto dim = static_cast<std::size_t>(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<Complex> m(dim * dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < dim; ++k) {
            m[j * dim + k] = (std::popcount(j & k) % 2 == 0) ? scale : -scale;
        }
    }
    return m;
}

PureState PureState::zero_state(Modulus modulus, std::size_t n,
                                std::uint64_t budget) {
    if (n == 0) {
        fail(ErrorKind::Domain, "registers need at least one site");
    }
    std::uint64_t total = 0;
    try {
        total = checked_power(static_cast<std::uint64_t>(modulus.value()), 2 * n);
    } catch (const Error &) {
        fail(ErrorKind::Capacity, "d^{2n} = " + std::to_string(modulus.value()) +
                                      "^" + std::to_string(2 * n) +
                                      " amplitudes overflows 64 bits");
    }
    if (total > budget) {
        fail(ErrorKind::Capacity, "d^{2n} = " + std::to_string(total) +
                                      " amplitudes exceeds the budget of " +
                                      std::to_string(budget));
    }
    std::vector<Complex> amps(total, Complex{0.0, 0.0});
    amps[0] = 1.0;
    return PureState(modulus, n, std::move(amps));
}

PureState::PureState(Modulus modulus, std::size_t n, std::vector<Complex> amplitudes)
    : modulus_(modulus), n_(n),
      reg_dim_(checked_power(static_cast<std::uint64_t>(modulus.value()), n)),
      amps_(std::move(amplitudes)) {
    if (n == 0 || amps_.size() != reg_dim_ * reg_dim_) {
        fail(ErrorKind::ShapeMismatch, "amplitude vector must have length d^{2n}");
    }
}

Complex PureState::amplitude(const ZVec &reg1, const ZVec &reg2) const {
    for (const auto *r : {&reg1, &reg2}) {
        if (r->modulus() != modulus_ || r->size() != n_) {
            fail(ErrorKind::DimensionMismatch, "register value " + to_text(*r) +
                                                   " does not match the state");
        }
    }
    return amps_[reg1.to_index() * reg_dim_ + reg2.to_index()];
}

namespace {

// Clears a range, writing only entries that are not already zero; states
// here are mostly sparse, so this touches far fewer cache lines than a fill.
inline void clear_sparse(Complex *first, Complex *last) {
    for (; first != last; ++first) {
        if (first->real() != 0.0 || first->imag() != 0.0) *first = Complex{};
    }
}

} // namespace

void PureState::reset_to_zero() noexcept {
    clear_sparse(amps_.data(), amps_.data() + amps_.size());
    amps_[0] = 1.0;
}

double PureState::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto &a : amps_) acc += std::norm(a);
    return acc;
}

void PureState::check_site(std::size_t site) const {
    if (site >= num_sites()) {
        fail(ErrorKind::IndexOutOfRange, "site " + std::to_string(site) +
                                             " outside [0, " +
                                             std::to_string(num_sites()) + ")");
    }
}

void PureState::check_register(int register_index) {
    if (register_index != 1 && register_index != 2) {
        fail(ErrorKind::IndexOutOfRange,
             "register index must be 1 or 2, got " + std::to_string(register_index));
    }
}

void PureState::apply_x(std::size_t site) {
    check_site(site);
    const auto d = static_cast<std::uint64_t>(modulus_.value());
    const auto stride = checked_power(d, num_sites() - 1 - site);
    const auto block = stride * d;
    for (std::uint64_t base = 0; base < amps_.size(); base += block) {
        for (std::uint64_t off = 0; off < stride; ++off) {
            // |j> -> |j+1>: rotate the slice right by one.
            const auto first = base + off;
            Complex carry = amps_[first + (d - 1) * stride];
            for (std::uint64_t j = d - 1; j > 0; --j) {
                amps_[first + j * stride] = amps_[first + (j - 1) * stride];
            }
            amps_[first] = carry;
        }
    }
}

namespace {

// out = M in for a d-vector gathered at `stride` spacing; skips all-zero
// slices. Plain real arithmetic avoids the NaN-recovery path of complex
// multiplication.
inline void site_kernel(Complex *first, std::uint64_t stride, std::uint64_t d,
                        const Complex *matrix, Complex *in) {
    bool any = false;
    for (std::uint64_t k = 0; k < d; ++k) {
        in[k] = first[k * stride];
        any = any || in[k].real() != 0.0 || in[k].imag() != 0.0;
    }
    if (!any) return;
    for (std::uint64_t j = 0; j < d; ++j) {
        double re = 0.0, im = 0.0;
        const Complex *row = matrix + j * d;
        for (std::uint64_t k = 0; k < d; ++k) {
            re += row[k].real() * in[k].real() - row[k].imag() * in[k].imag();
            im += row[k].real() * in[k].imag() + row[k].imag() * in[k].real();
        }
        first[j * stride] = Complex{re, im};
    }
}

} // namespace

std::vector<std::uint64_t> PureState::active_columns() const {
    // Branch-free bit test so the scan vectorizes; the shift drops the sign
    // bit, so -0.0 counts as zero.
    std::vector<std::uint64_t> seen(reg_dim_, 0);
    for (std::uint64_t x = 0; x < reg_dim_; ++x) {
        const Complex *row = amps_.data() + x * reg_dim_;
        for (std::uint64_t a = 0; a < reg_dim_; ++a) {
            const auto bits = std::bit_cast<std::array<std::uint64_t, 2>>(row[a]);
            seen[a] |= (bits[0] | bits[1]) << 1;
        }
    }
    std::vector<std::uint64_t> cols;
    for (std::uint64_t a = 0; a < reg_dim_; ++a) {
        if (seen[a]) cols.push_back(a);
    }
    return cols;
}

void PureState::apply_register1_site(std::size_t site, std::span<const Complex> matrix,
                                     std::span<const std::uint64_t> columns) {
    // Offsets within a slice split as (lower register-1 digits, column), so
    // only the listed register-2 columns need visiting.
    const auto d = static_cast<std::uint64_t>(modulus_.value());
    const auto inner = checked_power(d, n_ - 1 - site);
    const auto stride = inner * reg_dim_;
    const auto block = stride * d;
    std::vector<Complex> in(d);
    for (std::uint64_t base = 0; base < amps_.size(); base += block) {
        for (std::uint64_t r = 0; r < inner; ++r) {
            for (auto a : columns) {
                site_kernel(amps_.data() + base + r * reg_dim_ + a, stride, d, matrix.data(),
                            in.data());
            }
        }
    }
}

void PureState::apply_site_matrix(std::size_t site, std::span<const Complex> matrix) {
    check_site(site);
    const auto d = static_cast<std::uint64_t>(modulus_.value());
    if (matrix.size() != d * d) {
        fail(ErrorKind::ShapeMismatch, "site matrix must be d x d");
    }
    if (site < n_) {
        apply_register1_site(site, matrix, active_columns());
        return;
    }
    const auto stride = checked_power(d, num_sites() - 1 - site);
    const auto block = stride * d;
    std::vector<Complex> in(d);
    for (std::uint64_t base = 0; base < amps_.size(); base += block) {
        for (std::uint64_t off = 0; off < stride; ++off) {
            site_kernel(amps_.data() + base + off, stride, d, matrix.data(), in.data());
        }
    }
}

void PureState::apply_register_matrix(int register_index, std::span<const Complex> matrix) {
    check_register(register_index);
    if (register_index == 1) {
        const auto cols = active_columns();
        for (std::size_t s = 0; s < n_; ++s) {
            apply_register1_site(s, matrix, cols);
        }
        return;
    }
    for (std::size_t s = n_; s < 2 * n_; ++s) {
        apply_site_matrix(s, matrix);
    }
}

void PureState::apply_qft(std::size_t site, bool inverse) {
    check_site(site);
    apply_site_matrix(site, qft_matrix(d(), inverse));
}

void PureState::apply_layer_hadamard(std::size_t site) {
    check_site(site);
    apply_site_matrix(site, layer_hadamard_matrix(d()));
}

void PureState::apply_qft_register(int register_index, bool inverse) {
    apply_register_matrix(register_index, qft_matrix(d(), inverse));
}

void PureState::apply_layer_hadamard_register(int register_index) {
    apply_register_matrix(register_index, layer_hadamard_matrix(d()));
}

void PureState::apply_oracle(const PromiseOracle &oracle) {
    if (oracle.modulus() != modulus_ || oracle.n() != n_) {
        fail(ErrorKind::ShapeMismatch,
             "oracle over Z_" + std::to_string(oracle.d()) + "^" +
                 std::to_string(oracle.n()) + " does not match the state");
    }
    const auto d = static_cast<std::uint64_t>(modulus_.value());
    const auto dim = reg_dim_;
    std::vector<std::pair<std::uint64_t, Complex>> moved;
    moved.reserve(dim);
    std::vector<std::uint64_t> f_digits(n_);
    // The target register is permuted row by row: a -> a + f(x) digitwise.
    // Only nonzero entries move; clearing their sources first keeps every
    // other slot zero.
    for (std::uint64_t x = 0; x < dim; ++x) {
        Complex *row = amps_.data() + x * dim;
        auto fx = oracle(x);
        if (fx == 0) continue;
        moved.clear();
        for (std::uint64_t a = 0; a < dim; ++a) {
            if (row[a].real() != 0.0 || row[a].imag() != 0.0) {
                moved.emplace_back(a, row[a]);
                row[a] = Complex{};
            }
        }
        if (moved.empty()) continue;
        for (std::size_t i = n_; i-- > 0;) {
            f_digits[i] = fx % d;
            fx /= d;
        }
        for (const auto &[a, value] : moved) {
            auto rest = a;
            std::uint64_t target = 0, place = 1;
            for (std::size_t i = n_; i-- > 0;) {
                const auto digit = rest % d + f_digits[i];
                target += (digit >= d ? digit - d : digit) * place;
                rest /= d;
                place *= d;
            }
            row[target] = value;
        }
    }
}

std::vector<double> PureState::marginal(int register_index) const {
    check_register(register_index);
    const auto dim = reg_dim_;
    std::vector<double> p(dim, 0.0);
    for (std::uint64_t x = 0; x < dim; ++x) {
        const Complex *row = amps_.data() + x * dim;
        if (register_index == 1) {
            double acc = 0.0;
            for (std::uint64_t a = 0; a < dim; ++a) acc += std::norm(row[a]);
            p[x] = acc;
        } else {
            for (std::uint64_t a = 0; a < dim; ++a) p[a] += std::norm(row[a]);
        }
    }
    return p;
}

MeasurementRecord PureState::measure_register(int register_index, Rng &rng) {
    check_register(register_index);
    const auto p = marginal(register_index);
    double norm = 0.0;
    for (auto v : p) norm += v;
    if (std::abs(norm - 1.0) > kNormTolerance) {
        fail(ErrorKind::Normalization,
             "cannot measure: squared norm is " + std::to_string(norm));
    }
    const double r = uniform01(rng) * norm;
    double acc = 0.0;
    std::uint64_t pick = p.size();
    for (std::uint64_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        acc += p[i];
        pick = i;
        if (r < acc) break;
    }
    const auto outcome = ZVec::from_index(modulus_, n_, pick);
    const double prob = project_register(register_index, outcome);
    return {register_index, outcome, prob};
}

double PureState::project_register(int register_index, const ZVec &outcome) {
    check_register(register_index);
    if (outcome.modulus() != modulus_ || outcome.size() != n_) {
        fail(ErrorKind::DimensionMismatch, "outcome " + to_text(outcome) +
                                               " does not match the register");
    }
    const auto dim = reg_dim_;
    const auto keep = outcome.to_index();
    double total = 0.0;
    double prob = 0.0;
    if (register_index == 1) {
        for (std::uint64_t x = 0; x < dim; ++x) {
            Complex *row = amps_.data() + x * dim;
            double mass = 0.0;
            for (std::uint64_t a = 0; a < dim; ++a) mass += std::norm(row[a]);
            total += mass;
            if (x == keep) {
                prob = mass;
            } else if (mass != 0.0) {
                clear_sparse(row, row + dim);
            }
        }
    } else {
        for (std::uint64_t x = 0; x < dim; ++x) {
            Complex *row = amps_.data() + x * dim;
            const Complex kept = row[keep];
            for (std::uint64_t a = 0; a < dim; ++a) {
                if (row[a].real() != 0.0 || row[a].imag() != 0.0) {
                    total += std::norm(row[a]);
                    row[a] = Complex{};
                }
            }
            row[keep] = kept;
            prob += std::norm(kept);
        }
    }
    if (prob <= 0.0) {
        fail(ErrorKind::Domain, "outcome " + to_text(outcome) + " has probability zero");
    }
    // Only the surviving slice is nonzero, so only it needs rescaling.
    const double scale = 1.0 / std::sqrt(prob);
    if (register_index == 1) {
        Complex *row = amps_.data() + keep * dim;
        for (std::uint64_t a = 0; a < dim; ++a) row[a] *= scale;
    } else {
        for (std::uint64_t x = 0; x < dim; ++x) amps_[x * dim + keep] *= scale;
    }
    return prob / total;
}

std::vector<OutcomeProbability> PureState::exact_distribution(int register_index) const {
    const auto p = marginal(register_index);
    std::vector<OutcomeProbability> out;
    for (std::uint64_t i = 0; i < p.size(); ++i) {
        if (p[i] < kPruneBelow) continue;
        out.push_back({ZVec::from_index(modulus_, n_, i), p[i]});
    }
    return out;
}

} // namespace qsimon
