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
 * Closed-form repetition budgets for the qudit Simon algorithm.
 *
 * The single-run failure bound is (d+1)/d^2 - d^{-n}; k runs fail together
 * with probability at most its k-th power. Everything here is plain double
 * arithmetic; ceilings are taken after a 1e-12 downward nudge so that values
 * landing exactly on an integer are not bumped up by rounding noise.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qsimon::analytics {

inline constexpr double kCeilNudge = 1e-12;

/// (d+1)/d^2 - d^{-n}; requires d >= 2, n >= 2.
double p_fail_single(std::int64_t d, std::int64_t n);
/// (d+1)/d^2, the n -> infinity limit.
double p_fail_asymptotic(std::int64_t d);

/// ceil(log eps / log p_fail_single(d, n)).
std::int64_t k_required(std::int64_t d, std::int64_t n, double eps);
/// ceil(-log eps / (2 log d - log(d+1))).
std::int64_t k_required_asymptotic(std::int64_t d, double eps);

/// Smallest d >= 2 with (d+1)/d^2 <= eps.
std::int64_t single_shot_threshold_dim(double eps);

struct LiftMultiplicity {
    std::int64_t multiplicity; ///< l
    std::int64_t lifted_dim;   ///< d' = l d
    double achieved_bound;     ///< (d'+1)/d'^2
    double real_bound;         ///< (1 + sqrt(1 + 4 eps)) / (2 eps d)
};

/// Smallest l >= 1 with (l d + 1)/(l d)^2 <= eps.
LiftMultiplicity lift_multiplicity(std::int64_t d, double eps);

struct BudgetReport {
    double base;
    double p_fail_single;
    std::int64_t k_exact;
    std::int64_t k_asymptotic;
};

BudgetReport budget(std::int64_t d, std::int64_t n, double eps);

struct Fig1Row {
    std::int64_t d;
    double f;
};
struct Fig2Row {
    std::int64_t d;
    std::int64_t n;
    double epsilon;
    double k;
};
struct Table1Row {
    double epsilon;
    std::int64_t d_single_shot;
    std::int64_t k_d2;
};

/// log 3 / (2 log d - log(d+1)) for each d in the grid.
std::vector<Fig1Row> fig1(const std::vector<std::int64_t> &d_grid);
/// log eps / log((d+1)/d^2 - d^{-n}) over the product grid.
std::vector<Fig2Row> fig2(const std::vector<std::int64_t> &d_grid,
                          const std::vector<std::int64_t> &n_grid,
                          const std::vector<double> &eps_grid);
/// One row per eps: single-shot dimension and asymptotic k at d = 2.
std::vector<Table1Row> table1(const std::vector<double> &eps_grid = {1e-1, 1e-2, 1e-3});

void write_fig1_csv(std::ostream &out, const std::vector<Fig1Row> &rows);
void write_fig2_csv(std::ostream &out, const std::vector<Fig2Row> &rows);
void write_table1_csv(std::ostream &out, const std::vector<Table1Row> &rows);

/// Gnuplot script plotting the CSVs written next to it.
std::string gnuplot_script(const std::optional<std::string> &fig1_csv,
                           const std::optional<std::string> &fig2_csv,
                           const std::vector<double> &eps_grid);

} // namespace qsimon::analytics
