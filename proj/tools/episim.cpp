// Copyright 2026 The episim Authors
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

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data error.

#include "episim/batch.h"
#include "episim/calibration.h"
#include "episim/csv.h"
#include "episim/morris.h"
#include "episim/scenario.h"
#include "episim/sweep.h"
#include "episim/validation.h"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace episim;

namespace
{

constexpr int exit_usage = 1;
constexpr int exit_data  = 2;

/// Problems with the content of an input file (as opposed to flag values).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
auto reading(F&& load) -> decltype(load())
{
    try {
        return load();
    }
    catch (const ConfigError& e) {
        throw DataError(e.what());
    }
    catch (const InputError& e) {
        throw DataError(e.what());
    }
    catch (const ScenarioError& e) {
        throw DataError(e.what());
    }
}

SimConfig load_base(const std::string& path)
{
    if (path.empty()) {
        return SimConfig{};
    }
    return reading([&] { return load_config(path); });
}

std::ofstream open_out(const fs::path& path)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw DataError(fmt::format("cannot write '{}'", path.string()));
    }
    return out;
}

std::vector<double> parse_levels(const std::string& text)
{
    std::vector<double> out;
    for (const auto& f : split_list(text)) {
        out.push_back(parse_double(f));
    }
    return out;
}

int resolve_workers(int flag)
{
    return flag > 0 ? flag : default_workers();
}

// ---- simulate

struct SimulateArgs {
    std::string config, scenario, out, daily;
    std::optional<std::uint64_t> seed;
    std::optional<int> max_days;
};

void simulate(const SimulateArgs& a)
{
    SimConfig config = load_base(a.config);
    const std::uint64_t seed = a.seed.value_or(config.seed);
    TimeSeries series;
    if (!a.scenario.empty()) {
        Scenario sc = reading([&] { return load_scenario(a.scenario); });
        if (a.max_days) {
            sc.max_days = *a.max_days;
        }
        series = run_scenario(sc, config, seed);
    }
    else {
        if (a.max_days) {
            config.max_days = *a.max_days;
        }
        config.validate();
        series = run_simulation(config, seed, static_cast<std::int64_t>(config.max_days) * config.ticks_per_day);
    }
    auto out = open_out(a.out);
    write_timeseries_csv(out, series);
    if (!a.daily.empty()) {
        auto daily = open_out(a.daily);
        write_daily_csv(daily, daily_summary(series, config.ticks_per_day));
    }
    std::cerr << fmt::format("{} ticks, peak active {:.3f}%\n", series.size(),
                             series.empty() ? 0.0 : peak_infection(series));
}

// ---- sweep

struct SweepArgs {
    std::string param, levels, out, config;
    int reps            = 12;
    std::uint64_t seed_base = 1;
    int workers         = 0;
};

void sweep(const SweepArgs& a)
{
    SweepSpec spec;
    spec.parameter  = parse_factor(a.param);
    spec.replicates = a.reps;
    spec.seed_base  = a.seed_base;
    spec.base       = load_base(a.config);
    if (a.levels.empty()) {
        const Bounds& b = spec.bounds[spec.parameter];
        for (int i = 0; i < 6; ++i) {
            spec.levels.push_back(b.min + i * (b.max - b.min) / 5);
        }
    }
    else {
        spec.levels = parse_levels(a.levels);
    }
    const SweepResult result = run_sweep(spec, resolve_workers(a.workers));

    const fs::path dir = a.out;
    fs::create_directories(dir);
    auto runs = open_out(dir / "runs.csv");
    write_sweep_runs_csv(runs, result);
    auto summary = open_out(dir / "summary.csv");
    write_sweep_summary_csv(summary, result);
    auto sens = open_out(dir / "sensitivity.csv");
    sens << "parameter,sensitivity_index\n";
    if (result.levels.size() >= 2) {
        const auto idx = sensitivity_index(result.medians());
        sens << factor_name(spec.parameter) << ',' << (idx ? fmt::format("{:.6f}", *idx) : "no-signal") << '\n';
    }
    std::cerr << fmt::format("{} runs written to {}\n", spec.levels.size() * spec.replicates, dir.string());
}

// ---- grid and morris

struct GridArgs {
    std::string out, config;
    std::uint64_t sim_seed = 1;
    int levels             = 6;
    int replicates         = 1;
    int workers            = 0;
};

void grid(const GridArgs& a)
{
    ResultCache cache(load_base(a.config));
    if (fs::exists(a.out)) {
        std::vector<std::string> warnings;
        reading([&] { return cache.load(fs::path(a.out), &warnings); });
        for (const auto& w : warnings) {
            std::cerr << "warning: " << w << '\n';
        }
    }
    LevelGrid g;
    g.p     = a.levels;
    g.delta = 1.0 / (a.levels - 1);
    const FactorBounds bounds;
    EvaluationStats stats;
    evaluate_points(full_factorial(g), g, bounds, cache, a.sim_seed, resolve_workers(a.workers), a.replicates,
                    &stats);
    cache.save(fs::path(a.out));
    std::cerr << fmt::format("{} points, {} simulations run, {} cache hits\n", stats.points, stats.simulations_run,
                             stats.cache_hits);
}

struct MorrisArgs {
    std::string out, cache, config;
    int trajectories       = 30;
    double delta           = 0.2;
    int levels             = 6;
    std::uint64_t seed     = 1;
    std::uint64_t sim_seed = 1;
    int replicates         = 1;
    int workers            = 0;
};

void morris(const MorrisArgs& a)
{
    ResultCache cache(load_base(a.config));
    if (!a.cache.empty() && fs::exists(a.cache)) {
        std::vector<std::string> warnings;
        reading([&] { return cache.load(fs::path(a.cache), &warnings); });
        for (const auto& w : warnings) {
            std::cerr << "warning: " << w << '\n';
        }
    }
    LevelGrid g;
    g.p     = a.levels;
    g.delta = a.delta;
    const auto trajectories = generate_trajectories(g, a.trajectories, a.seed);
    EvaluationStats stats;
    const OutputTable outputs = evaluate_points(trajectory_points(trajectories), g, FactorBounds{}, cache,
                                                a.sim_seed, resolve_workers(a.workers), a.replicates, &stats);
    const EEResult result = analyze(trajectories, outputs, g);

    std::vector<std::string> names;
    for (Factor f : all_factors) {
        names.emplace_back(factor_name(f));
    }
    auto out = open_out(a.out);
    write_ee_csv(out, result, names);
    if (!a.cache.empty() && stats.simulations_run > 0) {
        cache.save(fs::path(a.cache));
    }
    std::cerr << fmt::format("{} trajectories, {} distinct points, {} simulations run, {} cache hits\n",
                             trajectories.size(), stats.points, stats.simulations_run, stats.cache_hits);
}

// ---- validate

struct ValidateArgs {
    std::string model, actual, out, column = "active_pct";
    std::uint64_t seed = 1;
};

void validate(const ValidateArgs& a)
{
    const CaseSeries model = reading([&] { return model_series(read_csv(fs::path(a.model)), a.column); });
    const CaseSeries actual = reading([&] { return read_actual_csv(fs::path(a.actual)); });
    const Correlation c = reading([&] {
        const CaseSeries sampled = downsample_to_daily(model, actual.size(), a.seed);
        return correlate(normalize(sampled), normalize(actual));
    });
    auto out = open_out(a.out);
    write_correlation_csv(out, c);
    std::cerr << fmt::format("n={} pearson={:.4f} (p={:.3g}) spearman={:.4f} (p={:.3g})\n", c.n, c.pearson,
                             c.pearson_p, c.spearman, c.spearman_p);
}

// ---- calibrate

struct CalibrateArgs {
    std::string config;
    CalibrationSpec spec;
    int workers = 0;
};

void calibrate_cmd(CalibrateArgs a)
{
    a.spec.base = load_base(a.config);
    const CalibrationResult r = calibrate(a.spec, resolve_workers(a.workers));
    for (const auto& s : r.steps) {
        std::cout << fmt::format("base_transmission_prob={:.6f} median_peak={:.3f}\n", s.transmission_prob,
                                 s.median_peak_pct);
    }
    std::cout << fmt::format("{}: base_transmission_prob = {:.6f} (median peak {:.3f}%, target {:.3f}%)\n",
                             r.converged ? "converged" : "best", r.transmission_prob, r.median_peak_pct,
                             a.spec.target_peak_pct);
}

// ---- index

struct IndexArgs {
    std::string medians;
    double tolerance = 0.002;
};

/// Sensitivity index for each row of `factor,expected_index,<median>...`; mismatches are flagged, not fatal.
void index_cmd(const IndexArgs& a)
{
    const CsvTable t = reading([&] { return read_csv(fs::path(a.medians)); });
    if (t.header.size() < 4 || t.header[0] != "factor" || t.header[1] != "expected_index") {
        throw DataError("medians CSV needs 'factor,expected_index' followed by at least two median columns");
    }
    std::cout << "factor,computed_index,expected_index,status\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        std::vector<double> medians;
        for (std::size_t c = 2; c < t.header.size(); ++c) {
            medians.push_back(reading([&] { return t.number(r, static_cast<int>(c)); }));
        }
        const double expected = reading([&] { return t.number(r, 1); });
        const auto idx        = sensitivity_index(medians);
        const bool match      = idx && std::abs(*idx - expected) <= a.tolerance;
        std::cout << fmt::format("{},{},{:.3f},{}\n", t.rows[r][0], idx ? fmt::format("{:.3f}", *idx) : "no-signal",
                                 expected, match ? "match" : "MISMATCH");
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spatial agent-based epidemic simulator and sensitivity-analysis toolkit"};
    app.require_subcommand(1);
    std::function<void()> action;

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Run one simulation and write its time series");
    s->add_option("--config", sim.config, "Config file (key = value)");
    s->add_option("--scenario", sim.scenario, "Scenario timeline file");
    s->add_option("--seed", sim.seed, "Simulation seed (default: config seed)");
    s->add_option("--out", sim.out, "Time series CSV")->required();
    s->add_option("--daily", sim.daily, "Daily CSV with new infections");
    s->add_option("--max-days", sim.max_days, "Override the run length")->check(CLI::PositiveNumber);
    s->callback([&] { action = [&] { simulate(sim); }; });

    SweepArgs sw;
    auto* w = app.add_subcommand("sweep", "One-at-a-time sweep over an intervention");
    w->add_option("--param", sw.param, "social_distancing, mask_usage, lockdown_delay or isolation")->required();
    w->add_option("--levels", sw.levels, "Comma-separated levels (default: 6 evenly spaced over the bounds)");
    w->add_option("--reps", sw.reps, "Replicates per level")->check(CLI::PositiveNumber);
    w->add_option("--out", sw.out, "Output directory")->required();
    w->add_option("--config", sw.config, "Base config file");
    w->add_option("--seed-base", sw.seed_base, "Seed base");
    w->add_option("--workers", sw.workers, "Worker threads (default: EPISIM_THREADS or all cores)");
    w->callback([&] { action = [&] { sweep(sw); }; });

    GridArgs gr;
    auto* g = app.add_subcommand("grid", "Full factorial batch over the four interventions into a cache CSV");
    g->add_option("--out", gr.out, "Cache CSV (extended if it exists)")->required();
    g->add_option("--config", gr.config, "Base config file");
    g->add_option("--sim-seed", gr.sim_seed, "Simulation seed shared by all points");
    g->add_option("--levels", gr.levels, "Levels per factor")->check(CLI::Range(2, 100));
    g->add_option("--replicates", gr.replicates, "Seeds per point")->check(CLI::PositiveNumber);
    g->add_option("--workers", gr.workers, "Worker threads");
    g->callback([&] { action = [&] { grid(gr); }; });

    MorrisArgs mo;
    auto* m = app.add_subcommand("morris", "Elementary effects screening of the four interventions");
    m->add_option("--trajectories", mo.trajectories, "Number of trajectories")->check(CLI::PositiveNumber);
    m->add_option("--delta", mo.delta, "Step in standardized units");
    m->add_option("--levels", mo.levels, "Levels per factor")->check(CLI::Range(2, 100));
    m->add_option("--cache", mo.cache, "Cache CSV consulted before simulating (updated with new runs)");
    m->add_option("--seed", mo.seed, "Trajectory seed");
    m->add_option("--sim-seed", mo.sim_seed, "Simulation seed");
    m->add_option("--replicates", mo.replicates, "Seeds per point; the output is their median")
        ->check(CLI::PositiveNumber);
    m->add_option("--out", mo.out, "Result CSV")->required();
    m->add_option("--config", mo.config, "Base config file");
    m->add_option("--workers", mo.workers, "Worker threads");
    m->callback([&] { action = [&] { morris(mo); }; });

    ValidateArgs va;
    auto* v = app.add_subcommand("validate", "Correlate a model curve with observed data");
    v->add_option("--model", va.model, "Model CSV (time series or daily)")->required();
    v->add_option("--actual", va.actual, "Observed CSV with 'date,value'")->required();
    v->add_option("--column", va.column, "Model column to compare (e.g. active_pct, new_infections)");
    v->add_option("--seed", va.seed, "Downsampling seed");
    v->add_option("--out", va.out, "Correlation CSV")->required();
    v->callback([&] { action = [&] { validate(va); }; });

    CalibrateArgs ca;
    auto* c = app.add_subcommand("calibrate", "Fit base_transmission_prob to a baseline peak");
    c->add_option("--config", ca.config, "Base config file");
    c->add_option("--target", ca.spec.target_peak_pct, "Target median peak active %");
    c->add_option("--tolerance", ca.spec.tolerance, "Stop when within this many points");
    c->add_option("--reps", ca.spec.replicates, "Seeds per candidate")->check(CLI::PositiveNumber);
    c->add_option("--seed-base", ca.spec.seed_base, "First seed");
    c->add_option("--lo", ca.spec.lo, "Lower end of the search interval");
    c->add_option("--hi", ca.spec.hi, "Upper end of the search interval");
    c->add_option("--iterations", ca.spec.iterations, "Maximum bisection steps")->check(CLI::PositiveNumber);
    c->add_option("--workers", ca.workers, "Worker threads");
    c->callback([&] { action = [&] { calibrate_cmd(ca); }; });

    IndexArgs ix;
    auto* x = app.add_subcommand("index", "Sensitivity indices from a table of per-level medians");
    x->add_option("--medians", ix.medians, "CSV: factor,expected_index,<median per level>...")
        ->required();
    x->add_option("--tolerance", ix.tolerance, "Allowed difference from the expected index");
    x->callback([&] { action = [&] { index_cmd(ix); }; });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        action();
    }
    catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    }
    catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    }
    catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    }
    catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    }
    return 0;
}
