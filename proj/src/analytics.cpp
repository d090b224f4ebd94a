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

#include "qsimon/analytics.hpp"

#include <cmath>
#include <sstream>

#include "qsimon/errors.hpp"
#include "qsimon/format.hpp"

namespace qsimon::analytics {

namespace {

void check_dim(std::int64_t d) {
    if (d < 2) fail(ErrorKind::Domain, "d must be at least 2, got " + std::to_string(d));
}

void check_n(std::int64_t n) {
    if (n < 2) fail(ErrorKind::Domain, "n must be at least 2, got " + std::to_string(n));
}

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        fail(ErrorKind::Domain, "epsilon must lie strictly between 0 and 1");
    }
}

std::int64_t nudged_ceil(double x) {
    return static_cast<std::int64_t>(std::ceil(x - kCeilNudge));
}

bool single_shot_ok(std::int64_t d, double eps) {
    const auto dd = static_cast<double>(d);
    return dd + 1.0 <= eps * dd * dd;
}

std::string fmt(double v) { return format_real(v); }

} // namespace

double p_fail_single(std::int64_t d, std::int64_t n) {
    check_dim(d);
    check_n(n);
    const auto dd = static_cast<double>(d);
    return (dd + 1.0) / (dd * dd) - std::pow(dd, -static_cast<double>(n));
}

double p_fail_asymptotic(std::int64_t d) {
    check_dim(d);
    const auto dd = static_cast<double>(d);
    return (dd + 1.0) / (dd * dd);
}

std::int64_t k_required(std::int64_t d, std::int64_t n, double eps) {
    check_eps(eps);
    const double base = p_fail_single(d, n);
    return std::max<std::int64_t>(1, nudged_ceil(std::log(eps) / std::log(base)));
}

std::int64_t k_required_asymptotic(std::int64_t d, double eps) {
    check_dim(d);
    check_eps(eps);
    const auto dd = static_cast<double>(d);
    const double rate = 2.0 * std::log(dd) - std::log(dd + 1.0);
    return std::max<std::int64_t>(1, nudged_ceil(-std::log(eps) / rate));
}

std::int64_t single_shot_threshold_dim(double eps) {
    check_eps(eps);
    // (d+1)/d^2 <= eps  <=>  eps d^2 - d - 1 >= 0; start just below the root.
    const double root = (1.0 + std::sqrt(1.0 + 4.0 * eps)) / (2.0 * eps);
    auto d = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::floor(root)) - 2);
    while (!single_shot_ok(d, eps)) ++d;
    while (d > 2 && single_shot_ok(d - 1, eps)) --d;
    return d;
}

LiftMultiplicity lift_multiplicity(std::int64_t d, double eps) {
    check_dim(d);
    check_eps(eps);
    const double real_bound = (1.0 + std::sqrt(1.0 + 4.0 * eps)) / (2.0 * eps * static_cast<double>(d));
    auto l = std::max<std::int64_t>(1, nudged_ceil(real_bound));
    while (!single_shot_ok(l * d, eps)) ++l;
    while (l > 1 && single_shot_ok((l - 1) * d, eps)) --l;
    const auto lifted = static_cast<double>(l * d);
    return {l, l * d, (lifted + 1.0) / (lifted * lifted), real_bound};
}

BudgetReport budget(std::int64_t d, std::int64_t n, double eps) {
    const double base = p_fail_single(d, n);
    return {base, base, k_required(d, n, eps), k_required_asymptotic(d, eps)};
}

std::vector<Fig1Row> fig1(const std::vector<std::int64_t> &d_grid) {
    if (d_grid.empty()) fail(ErrorKind::Domain, "fig1 needs a non-empty d grid");
    std::vector<Fig1Row> rows;
    for (auto d : d_grid) {
        check_dim(d);
        const auto dd = static_cast<double>(d);
        rows.push_back({d, std::log(3.0) / (2.0 * std::log(dd) - std::log(dd + 1.0))});
    }
    return rows;
}

std::vector<Fig2Row> fig2(const std::vector<std::int64_t> &d_grid,
                          const std::vector<std::int64_t> &n_grid,
                          const std::vector<double> &eps_grid) {
    if (d_grid.empty() || n_grid.empty() || eps_grid.empty()) {
        fail(ErrorKind::Domain, "fig2 needs non-empty d, n and epsilon grids");
    }
    std::vector<Fig2Row> rows;
    for (auto eps : eps_grid) {
        check_eps(eps);
        for (auto d : d_grid) {
            for (auto n : n_grid) {
                rows.push_back({d, n, eps, std::log(eps) / std::log(p_fail_single(d, n))});
            }
        }
    }
    return rows;
}

std::vector<Table1Row> table1(const std::vector<double> &eps_grid) {
    if (eps_grid.empty()) fail(ErrorKind::Domain, "table1 needs at least one epsilon");
    std::vector<Table1Row> rows;
    for (auto eps : eps_grid) {
        rows.push_back({eps, single_shot_threshold_dim(eps), k_required_asymptotic(2, eps)});
    }
    return rows;
}

void write_fig1_csv(std::ostream &out, const std::vector<Fig1Row> &rows) {
    out << "d,f\n";
    for (const auto &r : rows) out << r.d << ',' << fmt(r.f) << '\n';
}

void write_fig2_csv(std::ostream &out, const std::vector<Fig2Row> &rows) {
    out << "d,n,epsilon,k\n";
    for (const auto &r : rows) {
        out << r.d << ',' << r.n << ',' << fmt(r.epsilon) << ',' << fmt(r.k) << '\n';
    }
}

void write_table1_csv(std::ostream &out, const std::vector<Table1Row> &rows) {
    out << "epsilon,d_single_shot,k_d2\n";
    for (const auto &r : rows) {
        out << fmt(r.epsilon) << ',' << r.d_single_shot << ',' << r.k_d2 << '\n';
    }
}

std::string gnuplot_script(const std::optional<std::string> &fig1_csv,
                           const std::optional<std::string> &fig2_csv,
                           const std::vector<double> &eps_grid) {
    std::ostringstream s;
    s << "set datafile separator ','\n";
    s << "set terminal pngcairo size 900,600\n";
    if (fig1_csv) {
        s << "set output 'fig1.png'\n"
          << "set xlabel 'd'\nset ylabel 'k'\n"
          << "set title 'Asymptotic repetitions for P_fail <= 1/3'\n"
          << "plot '" << *fig1_csv << "' every ::1 using 1:2 with linespoints notitle\n";
    }
    if (fig2_csv) {
        s << "set xlabel 'd'\nset ylabel 'n'\nset zlabel 'k'\nset dgrid3d\n";
        for (std::size_t i = 0; i < eps_grid.size(); ++i) {
            const auto e = fmt(eps_grid[i]);
            s << "set output 'fig2_" << i << ".png'\n"
              << "set title 'epsilon = " << e << "'\n"
              << "splot '" << *fig2_csv << "' every ::1 using 1:2:($3==" << e
              << " ? $4 : 1/0) with pm3d notitle\n";
        }
    }
    return s.str();
}

} // namespace qsimon::analytics
