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

#include "episim/scenario.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace episim
{

namespace
{

constexpr std::string_view imports_key = "imported_cases_per_week";

using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_assignments(std::string_view text, const std::string& source, int line)
{
    KeyValues out;
    if (trim(text).empty()) {
        return out;
    }
    for (const auto& field : split_list(text)) {
        auto eq = field.find('=');
        if (eq == std::string::npos) {
            throw ScenarioError(source, line, fmt::format("expected key=value, got '{}'", field));
        }
        out.emplace_back(std::string(trim(std::string_view(field).substr(0, eq))),
                         std::string(trim(std::string_view(field).substr(eq + 1))));
    }
    return out;
}

int parse_count(const std::string& value, const std::string& source, int line, std::string_view what)
{
    long long v = 0;
    try {
        v = parse_int(value);
    }
    catch (const ConfigError& e) {
        throw ScenarioError(source, line, fmt::format("{}: {}", what, e.what()));
    }
    if (v < 0 || v > 1'000'000'000) {
        throw ScenarioError(source, line, fmt::format("{} must be a non-negative integer", what));
    }
    return static_cast<int>(v);
}

/// Split intervention changes from the import rate and check every key and value.
void classify(const KeyValues& kvs, const std::string& source, int line, InterventionParams& scratch,
              KeyValues& changes, std::optional<int>& imports)
{
    for (const auto& [key, value] : kvs) {
        if (key == imports_key) {
            imports = parse_count(value, source, line, imports_key);
            continue;
        }
        if (!is_intervention_key(key)) {
            throw ScenarioError(source, line, fmt::format("unknown parameter '{}'", key));
        }
        try {
            set_intervention_value(scratch, key, value);
        }
        catch (const ConfigError& e) {
            throw ScenarioError(source, line, e.what());
        }
        changes.emplace_back(key, value);
    }
}

} // namespace

const TimelineEvent* Scenario::event_on(int day) const
{
    auto it = std::lower_bound(events.begin(), events.end(), day,
                               [](const TimelineEvent& e, int d) { return e.day < d; });
    return it != events.end() && it->day == day ? &*it : nullptr;
}

Scenario parse_scenario(std::string_view text, const std::string& source)
{
    Scenario sc;
    std::map<int, TimelineEvent> events;
    bool in_events = false;
    bool have_ages = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view view = raw;
        if (auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }

        if (view.front() == '-') {
            if (!in_events) {
                throw ScenarioError(source, line, "list entry outside 'events:'");
            }
            auto kvs = parse_assignments(view.substr(1), source, line);
            auto day_it = std::find_if(kvs.begin(), kvs.end(), [](const auto& kv) { return kv.first == "day"; });
            if (day_it == kvs.end()) {
                throw ScenarioError(source, line, "event without 'day'");
            }
            const int day = parse_count(day_it->second, source, line, "day");
            kvs.erase(day_it);

            TimelineEvent& ev = events[day];
            ev.day            = day;
            ev.line           = ev.line == 0 ? line : ev.line;
            InterventionParams scratch;
            KeyValues changes;
            std::optional<int> imports;
            classify(kvs, source, line, scratch, changes, imports);
            // a later entry for the same day overrides earlier keys
            for (auto& kv : changes) {
                auto same = std::find_if(ev.changes.begin(), ev.changes.end(),
                                         [&](const auto& existing) { return existing.first == kv.first; });
                if (same != ev.changes.end()) {
                    same->second = kv.second;
                }
                else {
                    ev.changes.push_back(kv);
                }
            }
            if (imports) {
                ev.imported_cases_per_week = imports;
            }
            continue;
        }

        auto colon = view.find(':');
        if (colon == std::string_view::npos) {
            throw ScenarioError(source, line, fmt::format("expected 'key: value', got '{}'", view));
        }
        const auto key   = trim(view.substr(0, colon));
        const auto value = trim(view.substr(colon + 1));
        in_events        = false;

        if (key == "name") {
            sc.name = std::string(value);
        }
        else if (key == "max_days") {
            sc.max_days = parse_count(std::string(value), source, line, "max_days");
            if (sc.max_days == 0) {
                throw ScenarioError(source, line, "max_days must be positive");
            }
        }
        else if (key == "age_distribution") {
            auto fields = split_list(value);
            if (fields.size() != num_age_groups) {
                throw ScenarioError(source, line,
                                    fmt::format("age_distribution needs {} values, got {}", num_age_groups,
                                                fields.size()));
            }
            double total = 0;
            for (int i = 0; i < num_age_groups; ++i) {
                try {
                    sc.age_distribution[i] = parse_double(fields[i]);
                }
                catch (const ConfigError& e) {
                    throw ScenarioError(source, line, e.what());
                }
                if (sc.age_distribution[i] < 0) {
                    throw ScenarioError(source, line, "age_distribution values must be non-negative");
                }
                total += sc.age_distribution[i];
            }
            if (std::abs(total - 1.0) > 1e-3) {
                throw ScenarioError(source, line, fmt::format("age_distribution sums to {:.6g}, expected 1", total));
            }
            for (double& f : sc.age_distribution) {
                f /= total;
            }
            have_ages = true;
        }
        else if (key == "config") {
            sc.config_overrides = parse_assignments(value, source, line);
            SimConfig scratch;
            for (const auto& [k, v] : sc.config_overrides) {
                try {
                    set_config_value(scratch, k, v);
                }
                catch (const ConfigError& e) {
                    throw ScenarioError(source, line, e.what());
                }
            }
        }
        else if (key == "initial") {
            KeyValues changes;
            std::optional<int> imports;
            sc.initial = InterventionParams{};
            classify(parse_assignments(value, source, line), source, line, sc.initial, changes, imports);
            sc.initial_imported_cases_per_week = imports.value_or(0);
        }
        else if (key == "events") {
            if (!value.empty()) {
                throw ScenarioError(source, line, "'events:' takes no inline value");
            }
            in_events = true;
        }
        else {
            throw ScenarioError(source, line, fmt::format("unknown section '{}'", key));
        }
    }
    if (!have_ages) {
        sc.age_distribution = uniform_age_distribution;
    }
    for (auto& [day, ev] : events) {
        sc.events.push_back(std::move(ev));
    }

    // every intermediate parameter set must be valid
    InterventionParams params = sc.initial;
    for (const auto& ev : sc.events) {
        try {
            for (const auto& [k, v] : ev.changes) {
                set_intervention_value(params, k, v);
            }
            params.validate();
        }
        catch (const ConfigError& e) {
            throw ScenarioError(source, ev.line, e.what());
        }
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError(fmt::format("cannot open scenario file '{}'", path.string()));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.string());
}

SimConfig scenario_config(const Scenario& scenario, const SimConfig& base)
{
    SimConfig config       = base;
    config.age_distribution = scenario.age_distribution;
    config.interventions    = scenario.initial;
    for (const auto& [k, v] : scenario.config_overrides) {
        set_config_value(config, k, v);
    }
    config.max_days = scenario.max_days;
    return config;
}

void apply_events(World& world, const Scenario& scenario, ScenarioState& state)
{
    const TimelineEvent* ev = scenario.event_on(static_cast<int>(world.day()));
    if (ev == nullptr) {
        return;
    }
    if (!ev->changes.empty()) {
        InterventionParams params = world.config().interventions;
        for (const auto& [k, v] : ev->changes) {
            set_intervention_value(params, k, v);
        }
        world.set_interventions(params);
    }
    if (ev->imported_cases_per_week) {
        state.imported_cases_per_week = *ev->imported_cases_per_week;
    }
}

int inject_imported_cases(World& world, int rate)
{
    return world.infect_random_healthy(rate);
}

TimeSeries run_scenario(const Scenario& scenario, const SimConfig& base, std::uint64_t seed)
{
    const SimConfig config = scenario_config(scenario, base);
    World world            = init_world(config, seed);
    ScenarioState state;
    state.imported_cases_per_week = scenario.initial_imported_cases_per_week;

    TimeSeries series;
    series.population      = world.population();
    const int tpd          = config.ticks_per_day;
    for (int day = 0; day < scenario.max_days; ++day) {
        apply_events(world, scenario, state);
        int imported = 0;
        if (import_due(day)) {
            imported = inject_imported_cases(world, state.imported_cases_per_week);
            state.imported_total += imported;
        }
        for (int t = 0; t < tpd; ++t) {
            step(world);
            TimeSeriesRow row = record(world);
            if (t == 0) {
                row.new_infections += imported;
            }
            series.rows.push_back(row);
        }
    }
    return series;
}

} // namespace episim
