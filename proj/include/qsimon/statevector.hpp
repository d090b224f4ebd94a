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
 * Dense statevector over two n-site qudit registers.
 *
 * The flattened amplitude index is a base-d number over 2n sites with site
 * 0 (the first site of register 1) most significant; register 1 occupies
 * sites [0, n) and register 2 sites [n, 2n). Single-site gates run as a
 * d x d kernel over strided slices, skipping slices that are entirely zero.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qsimon/capacity.hpp"
#include "qsimon/oracle.hpp"
#include "qsimon/random.hpp"
#include "qsimon/zmod.hpp"

namespace qsimon {

using Complex = std::complex<double>;

/// Row-major d x d matrix with entries omega^{jk} / sqrt(d); the conjugate
/// transpose when `inverse` is set.
std::vector<Complex> qft_matrix(std::int64_t d, bool inverse = false);

/// Fourier transform over (Z_2)^l for d = 2^l: entries
/// (-1)^{popcount(j & k)} / sqrt(d), i.e. a Hadamard on every binary layer.
std::vector<Complex> layer_hadamard_matrix(std::int64_t d);

struct MeasurementRecord {
    int register_index; ///< 1 or 2
    ZVec outcome;
    double probability;
};

struct OutcomeProbability {
    ZVec outcome;
    double probability;
};

class PureState {
  public:
    /// |0...0>|0...0>. Throws Capacity when d^{2n} exceeds `budget`.
    static PureState zero_state(Modulus modulus, std::size_t n,
                                std::uint64_t budget = default_amplitude_budget());

    PureState(Modulus modulus, std::size_t n, std::vector<Complex> amplitudes);

    [[nodiscard]] Modulus modulus() const noexcept { return modulus_; }
    [[nodiscard]] std::int64_t d() const noexcept { return modulus_.value(); }
    [[nodiscard]] std::size_t sites_per_register() const noexcept { return n_; }
    [[nodiscard]] std::size_t num_sites() const noexcept { return 2 * n_; }
    [[nodiscard]] std::uint64_t register_dim() const noexcept { return reg_dim_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] Complex amplitude(const ZVec &reg1, const ZVec &reg2) const;
    [[nodiscard]] double norm_squared() const noexcept;

    /// Back to |0...0>|0...0> without reallocating.
    void reset_to_zero() noexcept;

    void apply_x(std::size_t site);
    void apply_qft(std::size_t site, bool inverse = false);
    void apply_layer_hadamard(std::size_t site);
    /// Applies an arbitrary d x d row-major matrix to one site.
    void apply_site_matrix(std::size_t site, std::span<const Complex> matrix);

    void apply_qft_register(int register_index, bool inverse = false);
    void apply_layer_hadamard_register(int register_index);

    /// |x>|a> -> |x>|a + f(x)>, digitwise mod d in register 2.
    void apply_oracle(const PromiseOracle &oracle);

    /// Born-rule sample of one register; the state collapses in place.
    MeasurementRecord measure_register(int register_index, Rng &rng);

    /// Projects one register onto `outcome` and renormalizes. Returns the
    /// probability that outcome had; throws Domain if it was zero.
    double project_register(int register_index, const ZVec &outcome);

    /// Marginal distribution of one register, sorted by outcome, with
    /// probabilities below 1e-12 dropped.
    [[nodiscard]] std::vector<OutcomeProbability>
    exact_distribution(int register_index) const;

  private:
    /// Register-2 basis indices carrying any amplitude.
    [[nodiscard]] std::vector<std::uint64_t> active_columns() const;
    void apply_register1_site(std::size_t site, std::span<const Complex> matrix,
                              std::span<const std::uint64_t> columns);
    void apply_register_matrix(int register_index, std::span<const Complex> matrix);
    [[nodiscard]] std::vector<double> marginal(int register_index) const;
    void check_site(std::size_t site) const;
    static void check_register(int register_index);

    Modulus modulus_;
    std::size_t n_;
    std::uint64_t reg_dim_;
    std::vector<Complex> amps_;
};

} // namespace qsimon
