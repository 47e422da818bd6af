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

#include "episim/rng.h"
#include "episim/validation.h"

#include "correlation_cases.h"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace episim;

TEST_CASE("oracle: correlations match reference statistics")
{
    REQUIRE(correlation_cases.size() == 20);
    for (std::size_t i = 0; i < correlation_cases.size(); ++i) {
        CAPTURE(i);
        const auto& c      = correlation_cases[i];
        const Correlation r = correlate(make_series(c.a), make_series(c.b));
        CHECK(std::abs(r.pearson - c.pearson) < 1e-6);
        CHECK(std::abs(r.pearson_p - c.pearson_p) < 1e-6);
        CHECK(std::abs(r.spearman - c.spearman) < 1e-6);
        CHECK(std::abs(r.spearman_p - c.spearman_p) < 1e-6);
    }
}

TEST_CASE("correlation examples")
{
    const auto a = make_series({1, 2, 3, 4, 5});
    const Correlation self = correlate(a, a);
    CHECK(self.pearson == doctest::Approx(1.0));
    CHECK(self.spearman == doctest::Approx(1.0));
    CHECK(self.pearson_p == 0);

    const Correlation anti = correlate(make_series({1, 3, 2, 5, 4}), make_series({5, 3, 4, 1, 2}));
    CHECK(anti.pearson == doctest::Approx(-1.0));

    const Correlation sq = correlate(a, make_series({1, 4, 9, 16, 25}));
    CHECK(sq.spearman == doctest::Approx(1.0));
    CHECK(sq.pearson == doctest::Approx(0.9811).epsilon(1e-4));

    CHECK_THROWS_AS(correlate(a, make_series({1, 1, 1, 1, 1})), InputError);
    CHECK_THROWS_AS(correlate(a, make_series({1, 2, 3})), InputError);
    CHECK_THROWS_AS(correlate(make_series({1, 2}), make_series({2, 1})), InputError);
}

TEST_CASE("average ranks share ties")
{
    CHECK(average_ranks({10, 20, 20, 5}) == std::vector<double>{2, 3.5, 3.5, 1});
    CHECK(average_ranks({1, 1, 1}) == std::vector<double>{2, 2, 2});
}

TEST_CASE("property: correlation symmetry and rank invariance")
{
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 3 + rng.below(30);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.uniform(0, 10);
            y[i] = x[i] * rng.uniform(0, 2) + rng.uniform(0, 5);
        }
        const Correlation ab = correlate(make_series(x), make_series(y));
        const Correlation ba = correlate(make_series(y), make_series(x));
        REQUIRE(ab.pearson == doctest::Approx(ba.pearson));
        REQUIRE(ab.spearman == doctest::Approx(ba.spearman));
        REQUIRE(ab.pearson_p == doctest::Approx(ba.pearson_p));

        std::vector<double> tx = x;
        for (double& v : tx) {
            v = std::exp(v) + 3;
        }
        const Correlation mono = correlate(make_series(tx), make_series(y));
        REQUIRE(mono.spearman == doctest::Approx(ab.spearman));
    }
}

TEST_CASE("normalize")
{
    const CaseSeries n = normalize(make_series({2, 4, 8}));
    CHECK(n.values == std::vector<double>{0.25, 0.5, 1.0});
    CHECK(normalize(n).values == n.values);
    CHECK_THROWS_AS(normalize(make_series({0, 0, 0})), InputError);

    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> v(1 + rng.below(40));
        for (double& x : v) {
            x = rng.uniform(0, 1000);
        }
        v[0]                 = 1;
        const CaseSeries once = normalize(make_series(v));
        REQUIRE(normalize(once).values == once.values);
        REQUIRE(*std::max_element(once.values.begin(), once.values.end()) == 1.0);
    }
}

TEST_CASE("downsampling picks one point per window")
{
    std::vector<double> hourly(240);
    for (std::size_t i = 0; i < hourly.size(); ++i) {
        hourly[i] = static_cast<double>(i);
    }
    const CaseSeries model = make_series(hourly);
    const CaseSeries d     = downsample_to_daily(model, 10, 3);
    REQUIRE(d.size() == 10);
    for (std::size_t j = 0; j < 10; ++j) {
        CHECK(d.time[j] >= 24.0 * j);
        CHECK(d.time[j] < 24.0 * (j + 1));
        CHECK(d.values[j] == d.time[j]);
    }
    CHECK_NOTHROW(d.validate());
    CHECK(downsample_to_daily(model, 10, 3).values == d.values);

    CHECK(downsample_to_daily(model, 240, 1).values == model.values);
    CHECK(downsample_to_daily(make_series(std::vector<double>(50, 2.5)), 7, 1).values == std::vector<double>(7, 2.5));
    CHECK_THROWS_AS(downsample_to_daily(model, 0, 1), InputError);
    CHECK_THROWS_AS(downsample_to_daily(model, 241, 1), InputError);

    // uneven windows still cover the series in order
    const CaseSeries u = downsample_to_daily(make_series(std::vector<double>(100, 1)), 7, 9);
    CHECK(u.size() == 7);
    CHECK_NOTHROW(u.validate());
}

TEST_CASE("actual data CSV")
{
    CHECK(parse_iso_date("1970-01-01") == 0);
    CHECK(parse_iso_date("2020-03-15") - parse_iso_date("2020-02-28") == 16);
    CHECK_THROWS_AS(parse_iso_date("2020-02-30"), InputError);
    CHECK_THROWS_AS(parse_iso_date("15/03/2020"), InputError);

    std::istringstream ok("date,value\n2020-03-01,5\n2020-03-02,7\n2020-03-03,4\n");
    const CaseSeries s = read_actual_csv(ok);
    CHECK(s.values == std::vector<double>{5, 7, 4});
    CHECK(s.time[1] - s.time[0] == 1);

    std::istringstream header("day,value\n2020-03-01,5\n");
    CHECK_THROWS_AS(read_actual_csv(header), InputError);
    std::istringstream order("date,value\n2020-03-02,5\n2020-03-01,5\n");
    CHECK_THROWS_AS(read_actual_csv(order), InputError);
    std::istringstream negative("date,value\n2020-03-01,-5\n");
    CHECK_THROWS_AS(read_actual_csv(negative), InputError);
    std::istringstream bad("date,value\n2020-03-01,5\nnot-a-date,6\n");
    try {
        read_actual_csv(bad);
        FAIL("expected an error");
    }
    catch (const InputError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}
