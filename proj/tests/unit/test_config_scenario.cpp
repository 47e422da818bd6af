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

#include "episim/factors.h"
#include "episim/scenario.h"

#include <doctest.h>

#include <numeric>
#include <string>

using namespace episim;

namespace
{

const std::string data_dir = EPISIM_DATA_DIR;

SimConfig tiny_base()
{
    SimConfig c;
    c.population       = 300;
    c.grid_size        = std::sqrt(300.0);
    c.initial_infected = 3;
    return c;
}

} // namespace

TEST_CASE("config text format")
{
    const SimConfig c = parse_config("# comment\npopulation = 123\n\nsocial_distancing_m = 1.5 # trailing\n"
                                     "lockdown_enabled = true\nage_distribution = 0.2,0.1,0.1,0.1,0.1,0.1,0.1,0.1,0.1\n");
    CHECK(c.population == 123);
    CHECK(c.interventions.social_distancing_m == 1.5);
    CHECK(c.interventions.lockdown_enabled);
    CHECK(c.age_distribution[0] == 0.2);

    CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("population = lots\n"), ConfigError);
    try {
        parse_config("population = 5\n\nbogus\n", "x.cfg");
        FAIL("expected an error");
    }
    catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("x.cfg:3") != std::string::npos);
    }
}

TEST_CASE("shipped configs load")
{
    const SimConfig full = load_config(data_dir + "/config/default.cfg");
    CHECK(full.population == 10000);
    CHECK(full.interventions == InterventionParams{});
    CHECK(canonical_config(full) == canonical_config(SimConfig{}));

    const SimConfig desk = load_config(data_dir + "/config/desk.cfg");
    CHECK(desk.population == 2000);
    CHECK(desk.population / (desk.grid_size * desk.grid_size) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("canonical config and hash")
{
    SimConfig a;
    SimConfig b;
    CHECK(config_hash(a, 1) == config_hash(b, 1));
    CHECK(config_hash(a, 1) != config_hash(a, 2));
    b.seed = 99; // the seed is keyed separately
    CHECK(canonical_config(a) == canonical_config(b));
    b.interventions.mask_usage_rate = 20;
    CHECK(config_hash(a, 1) != config_hash(b, 1));
    // 9 significant digits
    a.interventions.social_distancing_m = 0.5;
    b                                   = a;
    b.interventions.social_distancing_m = 0.5 + 1e-12;
    CHECK(config_hash(a, 1) == config_hash(b, 1));

    // canonical text parses back to the same config
    const SimConfig back = parse_config(canonical_config(a));
    CHECK(canonical_config(back) == canonical_config(a));
}

TEST_CASE("model fatality from rates")
{
    const AgeArray m = model_fatality_from_rates(serious_rate_by_age_default, infection_fatality_ratio_default);
    for (int g = 0; g < num_age_groups; ++g) {
        CHECK(m[g] == doctest::Approx(model_fatality_by_age_default[g]).epsilon(0.005));
    }
}

TEST_CASE("factors")
{
    CHECK(parse_factor("social_distancing") == Factor::SocialDistancing);
    CHECK(parse_factor("mask_usage_rate") == Factor::MaskUsage);
    CHECK(parse_factor("lockdown_delay") == Factor::LockdownDelay);
    CHECK(parse_factor("isolation_rate") == Factor::Isolation);
    CHECK_THROWS_AS(parse_factor("vaccines"), ConfigError);

    SimConfig c;
    apply_factor(c, Factor::LockdownDelay, 12);
    CHECK(c.interventions.lockdown_enabled);
    CHECK(factor_value(c, Factor::LockdownDelay) == 12);
}

TEST_CASE("scenario parsing")
{
    const Scenario s = parse_scenario("name: Test\n"
                                      "max_days: 30\n"
                                      "initial: mask_usage_rate=10, imported_cases_per_week=4\n"
                                      "events:\n"
                                      "  - day=7, social_distancing_m=1\n"
                                      "  - day=3, isolation_rate=50\n"
                                      "  - day=7, social_distancing_m=2, imported_cases_per_week=1\n");
    CHECK(s.name == "Test");
    CHECK(s.max_days == 30);
    CHECK(s.initial.mask_usage_rate == 10);
    CHECK(s.initial_imported_cases_per_week == 4);
    REQUIRE(s.events.size() == 2);
    CHECK(s.events[0].day == 3);
    CHECK(s.events[1].day == 7);
    // later entries for the same day override earlier keys
    REQUIRE(s.events[1].changes.size() == 1);
    CHECK(s.events[1].changes[0].second == "2");
    CHECK(s.events[1].imported_cases_per_week == 1);
    CHECK(s.event_on(5) == nullptr);
}

TEST_CASE("scenario errors carry line numbers")
{
    auto line_of = [](const std::string& text) {
        try {
            parse_scenario(text);
        }
        catch (const ScenarioError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("name: x\nevents:\n  - day=2, warp_drive=1\n") == 3);
    CHECK(line_of("name: x\nage_distribution: 0.5, 0.5\n") == 2);
    CHECK(line_of("events:\n  - social_distancing_m=1\n") == 2);
    CHECK(line_of("events:\n  - day=1, mask_usage_rate=150\n") == 2);
    CHECK(line_of("name: x\nbogus: 1\n") == 2);
    CHECK(line_of("name: x\n") == -1);
}

TEST_CASE("country presets")
{
    const Scenario hk = load_scenario(data_dir + "/scenarios/hong_kong.scn");
    const Scenario it = load_scenario(data_dir + "/scenarios/italy.scn");
    const Scenario uk = load_scenario(data_dir + "/scenarios/uk.scn");

    CHECK(hk.initial.social_distancing_m == 1.5);
    CHECK(hk.initial.mask_usage_rate == 99);
    CHECK(std::accumulate(hk.age_distribution.begin(), hk.age_distribution.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(allocate_age_counts(hk.age_distribution, 10000)[4] == 1514);

    auto params_on = [](const Scenario& s, int day) {
        InterventionParams p = s.initial;
        for (const auto& ev : s.events) {
            if (ev.day <= day) {
                for (const auto& [k, v] : ev.changes) {
                    set_intervention_value(p, k, v);
                }
            }
        }
        return p;
    };
    auto imports_on = [](const Scenario& s, int day) {
        int rate = s.initial_imported_cases_per_week;
        for (const auto& ev : s.events) {
            if (ev.day <= day && ev.imported_cases_per_week) {
                rate = *ev.imported_cases_per_week;
            }
        }
        return rate;
    };

    CHECK(params_on(hk, 13).lockdown_enabled == false);
    CHECK(params_on(hk, 14).lockdown_enabled);
    CHECK(params_on(hk, 14).ignore_lockdown_pct == 30);
    CHECK(imports_on(hk, 6) == 0);
    CHECK(imports_on(hk, 7) == 2);
    CHECK(imports_on(hk, 120) == 10);
    CHECK_FALSE(params_on(hk, 126).lockdown_enabled);
    CHECK(params_on(hk, 126).social_distancing_m == 0);
    CHECK(params_on(hk, 141).lockdown_enabled);
    CHECK(imports_on(hk, 141) == 2);

    CHECK(params_on(it, 0).isolation_rate == 30);
    CHECK(params_on(it, 3).isolation_rate == 60);
    CHECK(params_on(it, 7).isolation_rate == 90);
    CHECK(params_on(it, 7).city_confinement);
    CHECK(params_on(it, 10).social_distancing_m == 1);
    CHECK(params_on(it, 12).social_distancing_m == 1.5);
    CHECK(params_on(it, 15).lockdown_enabled);
    CHECK(imports_on(it, 0) == 25);
    CHECK(imports_on(it, 15) == 6);
    CHECK_FALSE(params_on(it, 42).lockdown_enabled);

    CHECK(uk.initial.mask_usage_rate == 5);
    CHECK(imports_on(uk, 0) == 40);
    CHECK(params_on(uk, 10).social_distancing_m == 2);
    CHECK(params_on(uk, 15).lockdown_enabled);
    CHECK(imports_on(uk, 15) == 6);
    CHECK(params_on(uk, 28).social_distancing_m == 1.5);
    CHECK(imports_on(uk, 38) == 18);
}

TEST_CASE("scenario runs")
{
    SUBCASE("no events, no imports, no infection gives a flat zero series")
    {
        SimConfig base        = tiny_base();
        base.initial_infected = 0;
        Scenario s;
        s.max_days          = 5;
        const TimeSeries ts = run_scenario(s, base, 1);
        CHECK(ts.size() == 5 * 24);
        for (const auto& r : ts.rows) {
            REQUIRE(r.active_pct == 0);
        }
    }
    SUBCASE("imports arrive weekly")
    {
        SimConfig base        = tiny_base();
        base.initial_infected = 0;
        base.disease.base_transmission_prob = 0;
        Scenario s;
        s.max_days                        = 30;
        s.initial_imported_cases_per_week = 3;
        const TimeSeries ts               = run_scenario(s, base, 2);
        int total                         = 0;
        for (const auto& r : ts.rows) {
            total += r.new_infections;
            if (r.new_infections > 0) {
                CHECK(r.tick % (7 * 24) == 1);
            }
        }
        CHECK(total == 3 * (30 / 7));
    }
    SUBCASE("an empty event changes nothing")
    {
        const SimConfig base = tiny_base();
        Scenario s;
        s.max_days        = 20;
        s.initial.mask_usage_rate = 30;
        const TimeSeries a = run_scenario(s, base, 3);
        TimelineEvent noop;
        noop.day = 5;
        s.events.push_back(noop);
        CHECK(run_scenario(s, base, 3) == a);
    }
    SUBCASE("events take effect at the start of their day")
    {
        SimConfig base = tiny_base();
        Scenario s;
        s.max_days = 4;
        TimelineEvent lock;
        lock.day     = 2;
        lock.changes = {{"lockdown_enabled", "true"}, {"lockdown_delay_days", "0"}};
        s.events.push_back(lock);
        const SimConfig config = scenario_config(s, base);
        World w                = init_world(config, 4);
        ScenarioState state;
        for (int day = 0; day < 4; ++day) {
            apply_events(w, s, state);
            CHECK(w.lockdown_active() == (day >= 2));
            for (int t = 0; t < 24; ++t) {
                step(w);
            }
        }
    }
    SUBCASE("injection stops when nobody is healthy")
    {
        SimConfig base        = tiny_base();
        base.initial_infected = 295;
        World w               = init_world(base, 5);
        CHECK(inject_imported_cases(w, 10) == 5);
        CHECK(w.count(HealthState::Healthy) == 0);
        CHECK(inject_imported_cases(w, 10) == 0);
    }
}
