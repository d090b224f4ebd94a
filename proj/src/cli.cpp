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

#include "qsimon/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "qsimon/analytics.hpp"
#include "qsimon/errors.hpp"
#include "qsimon/format.hpp"
#include "qsimon/oracle.hpp"
#include "qsimon/pipeline.hpp"
#include "qsimon/random.hpp"
#include "qsimon/serialization.hpp"

namespace qsimon::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Stream used to draw oracle output values, distinct from trial streams.
constexpr std::uint64_t kOracleStream = (std::uint64_t{1} << 63) + 1;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Capacity:
        return kCapacity;
    case ErrorKind::PromiseViolation:
        return kPromiseViolation;
    case ErrorKind::IncompleteConstraints:
        return kIncompleteConstraints;
    default:
        return kFailure;
    }
}

std::string format_double(double v) { return format_real(v); }

// "2,3,8:12" -> {2, 3, 8, 9, 10, 11, 12}
std::vector<std::int64_t> parse_int_grid(const std::string &text, const char *what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            const auto colon = item.find(':');
            if (colon == std::string::npos) {
                out.push_back(std::stoll(item));
            } else {
                const auto lo = std::stoll(item.substr(0, colon));
                const auto hi = std::stoll(item.substr(colon + 1));
                if (hi < lo || hi - lo > 1'000'000) throw std::invalid_argument(item);
                for (auto v = lo; v <= hi; ++v) out.push_back(v);
            }
        } catch (const std::logic_error &) {
            fail(ErrorKind::Domain, std::string("invalid ") + what + " grid entry '" + item + "'");
        }
    }
    if (out.empty()) fail(ErrorKind::Domain, std::string("empty ") + what + " grid");
    return out;
}

std::vector<double> parse_real_grid(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::logic_error &) {
            fail(ErrorKind::Domain, "invalid epsilon grid entry '" + item + "'");
        }
    }
    if (out.empty()) fail(ErrorKind::Domain, "empty epsilon grid");
    return out;
}

std::string mode_name(Mode m) { return m == Mode::Native ? "native" : "lifted"; }

PromiseOracle build_oracle(const ExperimentConfig &config) {
    if (config.oracle_file) {
        auto oracle = read_oracle_file(*config.oracle_file);
        if (config.mode == Mode::Lifted && !oracle.is_layered()) {
            if (!config.layers) fail(ErrorKind::Domain, "lifted mode needs --l");
            return lift_binary_oracle(BinaryOracle(std::move(oracle)), *config.layers);
        }
        return oracle;
    }
    auto rng = derive_stream(config.seed, kOracleStream);
    const auto assignment =
        config.canonical ? OutputAssignment::Canonical : OutputAssignment::SeededRandom;
    const ZVec s = parse_zvec(*config.shift);
    if (config.mode == Mode::Native) {
        return build_native_oracle(s, assignment, rng);
    }
    return lift_binary_oracle(build_binary_oracle(s, assignment, rng), *config.layers);
}

void check_oracle_shape(const ExperimentConfig &config, const PromiseOracle &oracle) {
    if (config.d && *config.d != oracle.d()) {
        fail(ErrorKind::Domain, "--d " + std::to_string(*config.d) +
                                    " disagrees with the oracle's d = " + std::to_string(oracle.d()));
    }
    if (config.n && *config.n != oracle.n()) {
        fail(ErrorKind::Domain, "--n " + std::to_string(*config.n) +
                                    " disagrees with the oracle's n = " + std::to_string(oracle.n()));
    }
}

std::string histogram_csv(const ExperimentSummary &summary) {
    std::ostringstream os;
    os << "outcome,count,probability\n";
    for (const auto &[y, count] : summary.histogram) {
        os << digits_to_text(y) << ',' << count << ','
           << format_double(static_cast<double>(count) / static_cast<double>(summary.trials))
           << '\n';
    }
    return os.str();
}

int cmd_simulate(ExperimentConfig config, unsigned threads, std::ostream &out) {
    config.validate();
    const auto oracle = build_oracle(config);
    check_oracle_shape(config, oracle);

    ExperimentOptions options;
    options.trials = config.trials;
    options.seed = config.seed;
    options.solve = config.solve;
    options.max_runs = config.max_runs;
    options.threads = threads;
    const auto summary = run_experiment(oracle, options);

    const json config_json = config_to_json(config);
    json s;
    s["config"] = config_json;
    s["d"] = oracle.d();
    s["n"] = oracle.n();
    s["trials"] = summary.trials;
    s["distinct_outcomes"] = summary.histogram.size();
    s["support_fraction"] = summary.support_fraction;
    if (summary.solve) {
        const auto &st = *summary.solve;
        json solve;
        solve["runs_used"] = st.runs_used;
        solve["complete"] = st.complete;
        solve["recovered_shift"] = st.recovered_shift ? json(to_text(*st.recovered_shift)) : json(nullptr);
        solve["matches_truth"] = st.matches_truth;
        solve["failure"] = st.failure;
        s["solve"] = solve;
    }

    const fs::path dir(config.out);
    fs::create_directories(dir);
    write_text_file(dir / "config.json", config_json.dump(2) + "\n");
    write_oracle_file(dir / "oracle.json", oracle);
    write_text_file(dir / "histogram.csv", histogram_csv(summary));
    write_text_file(dir / "summary.json", s.dump(2) + "\n");

    out << "trials: " << summary.trials << "\n";
    out << "distinct outcomes: " << summary.histogram.size() << "\n";
    out << "support fraction: " << format_double(summary.support_fraction) << "\n";
    if (!summary.solve) {
        return kOk;
    }
    const auto &st = *summary.solve;
    out << "runs used: " << st.runs_used << "\n";
    if (st.recovered_shift) {
        out << "recovered shift: " << to_text(*st.recovered_shift) << "\n";
    }
    if (!st.complete) {
        out << "recovery failed: " << st.failure << "\n";
        return kIncompleteConstraints;
    }
    if (!st.recovered_shift || !st.matches_truth) {
        out << "recovery failed: "
            << (st.failure.empty() ? "recovered shift does not match the oracle" : st.failure)
            << "\n";
        return kFailure;
    }
    return kOk;
}

} // namespace

void ExperimentConfig::validate() const {
    if (shift.has_value() == oracle_file.has_value()) {
        fail(ErrorKind::Domain, "exactly one of a shift or an oracle file is required");
    }
    if (trials < 1) fail(ErrorKind::Domain, "trials must be at least 1");
    if (mode == Mode::Lifted && shift && !layers) {
        fail(ErrorKind::Domain, "lifted mode needs the layer count l");
    }
    if (layers && (*layers < 1 || *layers > 30)) {
        fail(ErrorKind::Domain, "l must lie in [1, 30]");
    }
    if (mode == Mode::Lifted && layers && d && *d != (std::int64_t{1} << *layers)) {
        fail(ErrorKind::Domain, "lifted mode needs d = 2^l");
    }
}

json config_to_json(const ExperimentConfig &c) {
    json j;
    j["mode"] = mode_name(c.mode);
    j["d"] = c.d ? json(*c.d) : json(nullptr);
    j["l"] = c.layers ? json(*c.layers) : json(nullptr);
    j["n"] = c.n ? json(*c.n) : json(nullptr);
    j["shift"] = c.shift ? json(*c.shift) : json(nullptr);
    j["oracle_file"] = c.oracle_file ? json(*c.oracle_file) : json(nullptr);
    j["M"] = c.trials;
    j["seed"] = c.seed;
    j["max_runs"] = c.max_runs;
    j["solve"] = c.solve;
    j["canonical"] = c.canonical;
    j["out"] = c.out;
    return j;
}

ExperimentConfig config_from_json(const json &j) {
    if (!j.is_object()) fail(ErrorKind::Parse, "experiment config must be a JSON object");
    ExperimentConfig c;
    auto get = [&](const char *key, auto &target) {
        if (!j.contains(key) || j.at(key).is_null()) return;
        try {
            using T = std::remove_cvref_t<decltype(target)>;
            if constexpr (requires { typename T::value_type; } && !std::is_same_v<T, std::string>) {
                target = j.at(key).get<typename T::value_type>();
            } else {
                target = j.at(key).get<T>();
            }
        } catch (const json::exception &e) {
            fail(ErrorKind::Parse, std::string("field '") + key + "': " + e.what());
        }
    };
    if (j.contains("mode") && !j.at("mode").is_null()) {
        const auto m = j.at("mode");
        if (m == "native") c.mode = Mode::Native;
        else if (m == "lifted") c.mode = Mode::Lifted;
        else fail(ErrorKind::Parse, "field 'mode': expected 'native' or 'lifted'");
    }
    get("d", c.d);
    get("l", c.layers);
    get("n", c.n);
    get("shift", c.shift);
    get("oracle_file", c.oracle_file);
    get("M", c.trials);
    get("seed", c.seed);
    get("max_runs", c.max_runs);
    get("solve", c.solve);
    get("canonical", c.canonical);
    get("out", c.out);
    return c;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Qudit Simon algorithm simulator and analysis toolkit", "qsimon"};
    app.require_subcommand(1);

    // oracle gen | verify | lift
    auto *oracle_cmd = app.add_subcommand("oracle", "Build, verify or lift promise oracles");
    oracle_cmd->require_subcommand(1);

    std::int64_t gen_d = 0;
    std::size_t gen_n = 0;
    std::string gen_s, gen_out;
    std::uint64_t gen_seed = 0;
    bool gen_canonical = false;
    auto *gen = oracle_cmd->add_subcommand("gen", "Tabulate a native cyclic-shift oracle");
    gen->add_option("--d", gen_d, "Local dimension");
    gen->add_option("--n", gen_n, "Sites per register");
    gen->add_option("--s", gen_s, "Hidden shift, e.g. d4:2031")->required();
    gen->add_option("--seed", gen_seed, "Seed for the output assignment");
    gen->add_flag("--canonical", gen_canonical, "Map each orbit to its smallest member");
    gen->add_option("--out", gen_out, "Output file (stdout if omitted)");

    std::string verify_in;
    auto *verify = oracle_cmd->add_subcommand("verify", "Exhaustively check the promise");
    verify->add_option("--in", verify_in, "Oracle file")->required();

    std::string lift_in, lift_out;
    unsigned lift_l = 0;
    auto *lift = oracle_cmd->add_subcommand("lift", "Lift a binary oracle to d = 2^l");
    lift->add_option("--in", lift_in, "Binary oracle file")->required();
    lift->add_option("--l", lift_l, "Number of layers")->required();
    lift->add_option("--out", lift_out, "Output file (stdout if omitted)");

    // simulate
    auto *sim = app.add_subcommand("simulate", "Run a seeded experiment batch");
    std::string config_path, mode_text, sim_shift, sim_oracle, sim_out;
    std::int64_t sim_d = 0;
    unsigned sim_l = 0, threads = 0;
    std::size_t sim_n = 0, sim_trials = 0, sim_max_runs = 0;
    std::uint64_t sim_seed = 0;
    bool no_solve = false, sim_canonical = false;
    sim->add_option("--config", config_path, "Experiment config JSON");
    sim->add_option("--mode", mode_text, "native or lifted")->check(CLI::IsMember({"native", "lifted"}));
    sim->add_option("--d", sim_d, "Local dimension");
    sim->add_option("--l", sim_l, "Layers for lifted mode");
    sim->add_option("--n", sim_n, "Sites per register");
    sim->add_option("--s", sim_shift, "Hidden shift, e.g. d4:2031");
    sim->add_option("--oracle", sim_oracle, "Oracle file instead of a shift");
    sim->add_option("--trials", sim_trials, "Number of trials M");
    sim->add_option("--seed", sim_seed, "Master seed");
    sim->add_option("--max-runs", sim_max_runs, "Run budget for the solve");
    sim->add_option("--out", sim_out, "Output directory");
    sim->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sim->add_flag("--no-solve", no_solve, "Skip shift recovery");
    sim->add_flag("--canonical", sim_canonical, "Canonical oracle output values");

    // analyze
    auto *analyze = app.add_subcommand("analyze", "Repetition budgets and figure data");
    std::string what, out_dir, d_grid = "2:64", n_grid = "2:30", eps_grid = "0.1,0.01,0.001";
    std::int64_t an_d = 2, an_n = 0;
    double an_eps = 0.01;
    bool asymptotic = false, gnuplot = false;
    analyze->add_option("what", what, "table1 | fig1 | fig2 | k | lift | pfail | threshold")
        ->required()
        ->check(CLI::IsMember({"table1", "fig1", "fig2", "k", "lift", "pfail", "threshold"}));
    analyze->add_option("--d", an_d, "Local dimension");
    analyze->add_option("--n", an_n, "Sites per register");
    analyze->add_option("--eps", an_eps, "Target failure probability");
    analyze->add_flag("--asymptotic", asymptotic, "Use the large-n form");
    analyze->add_option("--d-grid", d_grid, "d values, e.g. 2:64 or 2,3,5");
    analyze->add_option("--n-grid", n_grid, "n values for fig2");
    analyze->add_option("--eps-grid", eps_grid, "epsilon values, comma separated");
    analyze->add_option("--out", out_dir, "Directory for CSV output");
    analyze->add_flag("--gnuplot", gnuplot, "Also write a gnuplot script");

    std::vector<std::string> argv_store{"qsimon"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kFailure;
    }

    try {
        if (*gen) {
            const ZVec s = parse_zvec(gen_s);
            if (gen_d != 0 && gen_d != s.d()) {
                fail(ErrorKind::Domain, "--d disagrees with the modulus of --s");
            }
            if (gen_n != 0 && gen_n != s.size()) {
                fail(ErrorKind::Domain, "--n disagrees with the length of --s");
            }
            auto rng = derive_stream(gen_seed, kOracleStream);
            const auto oracle = build_native_oracle(
                s, gen_canonical ? OutputAssignment::Canonical : OutputAssignment::SeededRandom, rng);
            if (gen_out.empty()) {
                out << oracle_to_json(oracle).dump() << "\n";
            } else {
                write_oracle_file(gen_out, oracle);
                out << "wrote " << gen_out << " (" << image_size(oracle) << " fibers)\n";
            }
            return kOk;
        }
        if (*verify) {
            const auto oracle = read_oracle_file(verify_in);
            const auto report = verify_promise(oracle);
            if (!report.passed) {
                const auto &v = *report.violation;
                out << "FAIL: " << v.reason << ": " << to_text(v.x) << " and " << to_text(v.y)
                    << " (f = " << to_text(oracle.evaluate(v.x)) << " vs "
                    << to_text(oracle.evaluate(v.y)) << ")\n";
                return kPromiseViolation;
            }
            out << "PASS: " << report.fiber_count << " fibers of size " << report.min_fiber_size
                << "\n";
            return kOk;
        }
        if (*lift) {
            auto binary = BinaryOracle(read_oracle_file(lift_in));
            const auto lifted = lift_binary_oracle(binary, lift_l);
            if (lift_out.empty()) {
                out << oracle_to_json(lifted).dump() << "\n";
            } else {
                write_oracle_file(lift_out, lifted);
                out << "wrote " << lift_out << " (d = " << lifted.d() << ", "
                    << image_size(lifted) << " fibers)\n";
            }
            return kOk;
        }
        if (*sim) {
            ExperimentConfig config;
            if (!config_path.empty()) {
                config = config_from_json(read_json_file(config_path));
            }
            if (!mode_text.empty()) config.mode = mode_text == "lifted" ? Mode::Lifted : Mode::Native;
            if (sim->count("--d")) config.d = sim_d;
            if (sim->count("--l")) config.layers = sim_l;
            if (sim->count("--n")) config.n = sim_n;
            if (sim->count("--s")) config.shift = sim_shift;
            if (sim->count("--oracle")) config.oracle_file = sim_oracle;
            if (sim->count("--trials")) config.trials = sim_trials;
            if (sim->count("--seed")) config.seed = sim_seed;
            if (sim->count("--max-runs")) config.max_runs = sim_max_runs;
            if (sim->count("--out")) config.out = sim_out;
            if (no_solve) config.solve = false;
            if (sim_canonical) config.canonical = true;
            return cmd_simulate(std::move(config), threads, out);
        }
        if (*analyze) {
            std::optional<fs::path> dir;
            if (!out_dir.empty()) {
                dir = fs::path(out_dir);
                fs::create_directories(*dir);
            }
            auto emit_csv = [&](const std::string &name, const std::string &csv) {
                out << csv;
                if (dir) write_text_file(*dir / name, csv);
            };
            const auto eps_values = parse_real_grid(eps_grid);
            if (what == "table1") {
                std::ostringstream csv;
                analytics::write_table1_csv(csv, analytics::table1(eps_values));
                emit_csv("table1.csv", csv.str());
            } else if (what == "fig1" || what == "fig2") {
                std::ostringstream csv;
                if (what == "fig1") {
                    analytics::write_fig1_csv(csv, analytics::fig1(parse_int_grid(d_grid, "d")));
                } else {
                    analytics::write_fig2_csv(
                        csv, analytics::fig2(parse_int_grid(d_grid, "d"), parse_int_grid(n_grid, "n"),
                                             eps_values));
                }
                emit_csv(what + ".csv", csv.str());
                if (gnuplot) {
                    if (!dir) fail(ErrorKind::Domain, "--gnuplot needs --out");
                    const auto script = what == "fig1"
                                            ? analytics::gnuplot_script("fig1.csv", std::nullopt, {})
                                            : analytics::gnuplot_script(std::nullopt, "fig2.csv", eps_values);
                    write_text_file(*dir / (what + ".gp"), script);
                }
            } else {
                json j{{"d", an_d}, {"epsilon", an_eps}};
                if (what == "k") {
                    if (asymptotic || an_n == 0) {
                        j["k"] = analytics::k_required_asymptotic(an_d, an_eps);
                        j["form"] = "asymptotic";
                    } else {
                        j["n"] = an_n;
                        j["k"] = analytics::k_required(an_d, an_n, an_eps);
                        j["form"] = "exact";
                    }
                } else if (what == "lift") {
                    const auto r = analytics::lift_multiplicity(an_d, an_eps);
                    j["l"] = r.multiplicity;
                    j["d_prime"] = r.lifted_dim;
                    j["bound"] = r.achieved_bound;
                    j["l_real"] = r.real_bound;
                } else if (what == "pfail") {
                    j.erase("epsilon");
                    if (asymptotic || an_n == 0) {
                        j["p_fail"] = analytics::p_fail_asymptotic(an_d);
                    } else {
                        j["n"] = an_n;
                        j["p_fail"] = analytics::p_fail_single(an_d, an_n);
                    }
                } else {
                    j.erase("d");
                    j["d_single_shot"] = analytics::single_shot_threshold_dim(an_eps);
                }
                out << j.dump() << "\n";
                if (dir) write_text_file(*dir / (what + ".json"), j.dump(2) + "\n");
            }
            return kOk;
        }
    } catch (const Error &e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}

} // namespace qsimon::cli
