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

#include "qsimon/pipeline.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "qsimon/analytics.hpp"
#include "qsimon/errors.hpp"
#include "qsimon/statevector.hpp"

namespace qsimon {

namespace {

void fourier_register1(PureState &state, const PromiseOracle &oracle) {
    if (oracle.is_layered()) {
        state.apply_layer_hadamard_register(1);
    } else {
        state.apply_qft_register(1);
    }
}

ConstraintSet add_sample(const PromiseOracle &oracle, ConstraintSet cs,
                         const ZVec &y) {
    if (const auto *l = std::get_if<LayeredShift>(&oracle.structure())) {
        for (const auto &layer : unpack(y, l->layers)) {
            cs = cs.extend(layer).constraints;
        }
        return cs;
    }
    return cs.extend(y).constraints;
}

ConstraintSet empty_constraints(const PromiseOracle &oracle) {
    return oracle.is_layered() ? ConstraintSet(Modulus(2), oracle.n())
                               : ConstraintSet(oracle.modulus(), oracle.n());
}

} // namespace

RunResult run_once(const PromiseOracle &oracle, Rng &rng, std::uint64_t budget) {
    auto state = PureState::zero_state(oracle.modulus(), oracle.n(), budget);
    return run_once(oracle, rng, state);
}

RunResult run_once(const PromiseOracle &oracle, Rng &rng, PureState &state) {
    if (state.modulus() != oracle.modulus() || state.sites_per_register() != oracle.n()) {
        fail(ErrorKind::ShapeMismatch, "scratch state does not match the oracle");
    }
    state.reset_to_zero();
    fourier_register1(state, oracle);
    state.apply_oracle(oracle);
    auto ancilla = state.measure_register(2, rng);
    fourier_register1(state, oracle);
    auto sample = state.measure_register(1, rng);
    const bool orthogonal = oracle.orthogonal_to_shift(sample.outcome);
    return {std::move(sample.outcome), std::move(ancilla.outcome), orthogonal};
}

std::uint64_t target_constraint_size(const PromiseOracle &oracle) {
    const std::uint64_t base = oracle.is_layered() ? 2 : static_cast<std::uint64_t>(oracle.d());
    return checked_power(base, oracle.n() - 1);
}

std::size_t default_max_runs(const PromiseOracle &oracle) {
    const auto n = static_cast<std::int64_t>(oracle.n());
    const auto k = n >= 2 ? analytics::k_required(oracle.d(), n, 1e-3)
                          : analytics::k_required_asymptotic(oracle.d(), 1e-3);
    return static_cast<std::size_t>(10 * (n + k));
}

CollectOutcome collect_until_constraints(const PromiseOracle &oracle, Rng &rng,
                                         std::size_t max_runs) {
    if (max_runs < 1) {
        fail(ErrorKind::Domain, "max_runs must be at least 1");
    }
    CollectOutcome out{empty_constraints(oracle), {}, 0, false};
    const auto target = target_constraint_size(oracle);
    std::optional<PureState> scratch;
    while (out.constraints.submodule_size() < target && out.runs_used < max_runs) {
        if (!scratch) scratch = PureState::zero_state(oracle.modulus(), oracle.n());
        auto run = run_once(oracle, rng, *scratch);
        ++out.runs_used;
        out.constraints = add_sample(oracle, std::move(out.constraints), run.sample);
        out.samples.push_back(std::move(run.sample));
    }
    out.complete = out.constraints.submodule_size() == target;
    return out;
}

ZVec recover_shift_native(const ConstraintSet &constraints) {
    const Modulus m = constraints.modulus();
    const std::size_t n = constraints.length();
    const auto target = checked_power(static_cast<std::uint64_t>(m.value()), n - 1);
    if (constraints.submodule_size() != target) {
        fail(ErrorKind::IncompleteConstraints,
             "constraints generate " + std::to_string(constraints.submodule_size()) +
                 " of the " + std::to_string(target) + " elements needed");
    }
    const auto solutions = annihilator(m, n, constraints.samples());
    auto canonical = canonical_generator(m, n, solutions);
    if (const auto *nc = std::get_if<NotCyclic>(&canonical)) {
        std::string divisors;
        for (auto e : nc->elementary_divisors) divisors += " " + std::to_string(e);
        fail(ErrorKind::InconsistentConstraints,
             "annihilator is not cyclic; elementary divisors:" + divisors);
    }
    auto s = std::get<ZVec>(std::move(canonical));
    if (order_of(s) != m.value()) {
        fail(ErrorKind::InconsistentConstraints,
             "annihilator generator " + to_text(s) + " does not have order d");
    }
    return s;
}

ZVec recover_shift_lifted(std::span<const ZVec> samples, unsigned layers,
                          std::size_t n) {
    ConstraintSet cs(Modulus(2), n);
    for (const auto &y : samples) {
        if (y.size() != n) {
            fail(ErrorKind::DimensionMismatch, "sample " + to_text(y) + " has the wrong length");
        }
        for (const auto &layer : unpack(y, layers)) {
            cs = cs.extend(layer).constraints;
        }
    }
    return recover_shift_native(cs);
}

bool same_cyclic_group(const ZVec &a, const ZVec &b) {
    if (a.modulus() != b.modulus() || a.size() != b.size()) {
        return false;
    }
    auto contains = [](const ZVec &gen, const ZVec &x) {
        for (std::int64_t k = 0; k < gen.d(); ++k) {
            if (gen.scaled(k) == x) return true;
        }
        return false;
    };
    return contains(a, b) && contains(b, a);
}

ExperimentSummary run_experiment(const PromiseOracle &oracle,
                                 const ExperimentOptions &options) {
    if (options.trials < 1) {
        fail(ErrorKind::Domain, "an experiment needs at least one trial");
    }
    const std::size_t m = options.trials;
    std::vector<std::optional<RunResult>> results(m);

    unsigned workers = options.threads != 0 ? options.threads
                                            : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, m));

    auto work = [&](std::size_t begin, std::size_t end) {
        if (begin >= end) return;
        auto scratch = PureState::zero_state(oracle.modulus(), oracle.n(), options.budget);
        for (std::size_t i = begin; i < end; ++i) {
            auto rng = derive_stream(options.seed, i);
            results[i] = run_once(oracle, rng, scratch);
        }
    };
    if (workers <= 1) {
        work(0, m);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        const std::size_t chunk = (m + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(m, begin + chunk);
            pool.emplace_back([&, w, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &t : pool) t.join();
        for (auto &e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    ExperimentSummary summary;
    summary.trials = m;
    std::size_t orthogonal = 0;
    for (const auto &r : results) {
        ++summary.histogram[r->sample];
        orthogonal += r->in_orthogonal ? 1 : 0;
    }
    summary.support_fraction = static_cast<double>(orthogonal) / static_cast<double>(m);

    if (options.solve) {
        SolveStats stats;
        auto rng = derive_stream(options.seed, kSolveStream);
        const auto max_runs = options.max_runs != 0 ? options.max_runs : default_max_runs(oracle);
        auto collected = collect_until_constraints(oracle, rng, max_runs);
        stats.runs_used = collected.runs_used;
        stats.complete = collected.complete;
        if (!collected.complete) {
            stats.failure = "incomplete constraints after " +
                            std::to_string(collected.runs_used) + " runs";
        } else {
            try {
                ZVec s = oracle.is_layered()
                             ? recover_shift_lifted(collected.samples,
                                                    std::get<LayeredShift>(oracle.structure()).layers,
                                                    oracle.n())
                             : recover_shift_native(collected.constraints);
                stats.matches_truth = oracle.is_layered() ? s == oracle.shift()
                                                          : same_cyclic_group(s, oracle.shift());
                stats.recovered_shift = std::move(s);
            } catch (const Error &e) {
                stats.failure = e.what();
            }
        }
        summary.solve = std::move(stats);
    }
    return summary;
}

CollisionResult classical_collision_search(const PromiseOracle &oracle, Rng &rng,
                                           std::size_t max_queries) {
    if (max_queries < 2) {
        fail(ErrorKind::Domain, "collision search needs at least two queries");
    }
    const auto size = oracle.domain_size();
    std::unordered_set<std::uint64_t> queried;
    std::unordered_map<std::uint64_t, std::uint64_t> first_input_for;
    CollisionResult result;
    while (result.queries_used < max_queries && queried.size() < size) {
        std::uint64_t x = uniform_below(rng, size);
        while (queried.contains(x)) x = uniform_below(rng, size);
        queried.insert(x);
        ++result.queries_used;
        const auto [it, inserted] = first_input_for.emplace(oracle(x), x);
        if (!inserted) {
            const auto earlier = ZVec::from_index(oracle.modulus(), oracle.n(), it->second);
            const auto later = ZVec::from_index(oracle.modulus(), oracle.n(), x);
            result.difference = later - earlier;
            return result;
        }
    }
    return result;
}

} // namespace qsimon
