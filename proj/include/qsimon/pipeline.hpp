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
 * End-to-end runs of the qudit Simon algorithm.
 *
 * One run prepares |0>|0>, Fourier-transforms register 1, applies the
 * oracle, measures register 2, Fourier-transforms register 1 again and
 * measures it. Cyclic oracles use QFT_d; layered (lifted) oracles use a
 * Hadamard on every binary layer, which is the Fourier transform of the
 * group their fibers live in.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsimon/capacity.hpp"
#include "qsimon/oracle.hpp"
#include "qsimon/random.hpp"
#include "qsimon/zmod.hpp"

namespace qsimon {

struct RunResult {
    ZVec sample;
    ZVec ancilla;
    /// Checked against the oracle metadata; for validation only.
    bool in_orthogonal;
};

RunResult run_once(const PromiseOracle &oracle, Rng &rng,
                   std::uint64_t budget = default_amplitude_budget());

class PureState;

/// Same as run_once, reusing `scratch` (reset to |0>|0> first) as the
/// statevector. `scratch` must match the oracle's d and n.
RunResult run_once(const PromiseOracle &oracle, Rng &rng, PureState &scratch);

/// Constraint-subgroup size that pins the shift down: d^{n-1} for cyclic
/// oracles, 2^{n-1} (pooled binary layers) for layered ones.
std::uint64_t target_constraint_size(const PromiseOracle &oracle);

/// 10 * (n + k_required(d, n, 1e-3)); the asymptotic k is used for n = 1.
std::size_t default_max_runs(const PromiseOracle &oracle);

struct CollectOutcome {
    /// Over Z_d for cyclic oracles; over Z_2 holding every unpacked layer
    /// for layered ones.
    ConstraintSet constraints;
    std::vector<ZVec> samples;
    std::size_t runs_used = 0;
    bool complete = false;
};

/// Runs until the constraints reach target_constraint_size or max_runs is
/// spent. An exhausted budget is reported through `complete`, not thrown.
CollectOutcome collect_until_constraints(const PromiseOracle &oracle, Rng &rng,
                                         std::size_t max_runs);

/// Canonical generator of the annihilator. Throws IncompleteConstraints
/// when the samples do not yet generate a subgroup of size d^{n-1}, and
/// InconsistentConstraints when the annihilator is not cyclic of order d.
ZVec recover_shift_native(const ConstraintSet &constraints);

/// Pools every binary layer of every sample as a mod-2 constraint and
/// solves for the binary shift.
ZVec recover_shift_lifted(std::span<const ZVec> samples, unsigned layers,
                          std::size_t n);

/// Whether a and b generate the same cyclic subgroup.
bool same_cyclic_group(const ZVec &a, const ZVec &b);

struct SolveStats {
    std::size_t runs_used = 0;
    bool complete = false;
    std::optional<ZVec> recovered_shift;
    bool matches_truth = false;
    std::string failure;
};

struct ExperimentOptions {
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    bool solve = true;
    std::size_t max_runs = 0; ///< 0 selects default_max_runs
    unsigned threads = 0;     ///< 0 selects hardware concurrency
    std::uint64_t budget = default_amplitude_budget();
};

struct ExperimentSummary {
    std::size_t trials = 0;
    std::map<ZVec, std::size_t> histogram;
    double support_fraction = 0.0;
    std::optional<SolveStats> solve;
};

/// Trial i draws from derive_stream(seed, i); the solve uses a separate
/// stream. Output is independent of the thread count.
ExperimentSummary run_experiment(const PromiseOracle &oracle,
                                 const ExperimentOptions &options);

/// Stream index reserved for the solve phase of run_experiment.
inline constexpr std::uint64_t kSolveStream = std::uint64_t{1} << 63;

struct CollisionResult {
    std::optional<ZVec> difference; ///< y - x for the first collision
    std::size_t queries_used = 0;
};

/// Queries distinct random inputs until two share an output.
CollisionResult classical_collision_search(const PromiseOracle &oracle, Rng &rng,
                                           std::size_t max_queries);

} // namespace qsimon
