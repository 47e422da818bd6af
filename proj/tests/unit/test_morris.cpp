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

#include "episim/morris.h"
#include "episim/rng.h"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>
#include <sstream>

using namespace episim;

namespace
{

using Model = std::function<double(const Point&)>;

OutputTable tabulate(const std::vector<Trajectory>& ts, const LevelGrid& g, const Model& f)
{
    OutputTable out;
    for (const auto& t : ts) {
        for (const auto& x : t.points) {
            out[point_key(x, g)] = f(x);
        }
    }
    return out;
}

/// Independent EE pass: changed coordinate found from integer levels, slope over the signed step.
std::vector<std::vector<double>> brute_force_effects(const std::vector<Trajectory>& ts, const LevelGrid& g,
                                                     const Model& f)
{
    std::vector<std::vector<double>> m;
    for (const auto& t : ts) {
        std::vector<double> row(g.k);
        for (std::size_t s = 1; s < t.points.size(); ++s) {
            const auto a = point_key(t.points[s - 1], g);
            const auto b = point_key(t.points[s], g);
            for (int j = 0; j < g.k; ++j) {
                if (a[j] != b[j]) {
                    const double dx = (b[j] - a[j]) / static_cast<double>(g.p - 1);
                    row[j]          = (f(t.points[s]) - f(t.points[s - 1])) / dx;
                }
            }
        }
        m.push_back(row);
    }
    return m;
}

} // namespace

TEST_CASE("level grid validation")
{
    CHECK_NOTHROW(LevelGrid{4, 6, 0.2}.validate());
    CHECK_NOTHROW(LevelGrid{4, 6, 0.6}.validate());
    CHECK_NOTHROW(LevelGrid{1, 2, 1.0}.validate());
    CHECK_THROWS_AS(LevelGrid({4, 6, 0.3}).validate(), ConfigError);
    CHECK_THROWS_AS(LevelGrid({4, 6, 1.2}).validate(), ConfigError);
    CHECK_THROWS_AS(LevelGrid({4, 6, 0.0}).validate(), ConfigError);
    CHECK_THROWS_AS(LevelGrid({4, 1, 0.2}).validate(), ConfigError);
    CHECK_THROWS_AS(generate_trajectories(LevelGrid{4, 6, 0.25}, 3, 1), ConfigError);
}

TEST_CASE("trajectory generation")
{
    const LevelGrid g{4, 6, 0.2};
    const auto ts = generate_trajectories(g, 30, 1);
    REQUIRE(ts.size() == 30);
    for (const auto& t : ts) {
        CHECK(t.points.size() == 5);
        CHECK_FALSE(validate_trajectory(t, g).has_value());
    }
    CHECK(trajectory_points(ts).size() == 150);

    SUBCASE("deterministic per seed")
    {
        const auto again = generate_trajectories(g, 30, 1);
        const auto other = generate_trajectories(g, 30, 2);
        bool same = true, differs = false;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            same    = same && again[i].points == ts[i].points;
            differs = differs || other[i].points != ts[i].points;
        }
        CHECK(same);
        CHECK(differs);
    }
    SUBCASE("two-level grid")
    {
        const LevelGrid two{1, 2, 1.0};
        for (const auto& t : generate_trajectories(two, 50, 3)) {
            REQUIRE(t.points.size() == 2);
            const bool up   = t.points[0] == Point{0} && t.points[1] == Point{1};
            const bool down = t.points[0] == Point{1} && t.points[1] == Point{0};
            CHECK((up || down));
        }
    }
    SUBCASE("bases cover the grid and both signs occur")
    {
        std::set<int> base_levels;
        int ups = 0, downs = 0;
        for (const auto& t : generate_trajectories(g, 400, 7)) {
            for (int v : point_key(t.points[0], g)) {
                base_levels.insert(v);
            }
            for (std::size_t s = 1; s < t.points.size(); ++s) {
                for (int j = 0; j < 4; ++j) {
                    const double d = t.points[s][j] - t.points[s - 1][j];
                    ups += d > 1e-9;
                    downs += d < -1e-9;
                }
            }
        }
        CHECK(base_levels.size() == 6);
        CHECK(ups > 0);
        CHECK(downs > 0);
    }
}

TEST_CASE("trajectory validation")
{
    const LevelGrid g{2, 6, 0.2};
    CHECK_FALSE(validate_trajectory({{{0, 0}, {0.2, 0}, {0.2, 0.2}}}, g).has_value());

    const auto two = validate_trajectory({{{0, 0}, {0.2, 0.2}, {0.2, 0.4}}}, g);
    REQUIRE(two.has_value());
    CHECK(*two == "step 1 changes 2 coordinates");

    const auto off = validate_trajectory({{{0, 0}, {0.3, 0}, {0.3, 0.2}}}, g);
    REQUIRE(off.has_value());
    CHECK(off->find("off-grid step") != std::string::npos);

    const auto twice = validate_trajectory({{{0, 0}, {0.2, 0}, {0.4, 0}}}, g);
    REQUIRE(twice.has_value());
    CHECK(twice->find("perturbed") != std::string::npos);

    CHECK(validate_trajectory({{{0, 0}, {0.2, 0}}}, g).has_value());
    CHECK(validate_trajectory({{{0, 0}, {0, 0}, {0.2, 0}}}, g).has_value());
    CHECK(validate_trajectory({{{0.9, 0}, {1.1, 0}, {1.1, 0.2}}}, g).has_value());
}

TEST_CASE("elementary effect")
{
    CHECK(elementary_effect(12, 10, 0.2, 1) == doctest::Approx(10));
    CHECK(elementary_effect(10, 10, 0.2, 1) == 0);
    CHECK(elementary_effect(12, 10, 0.2, -1) == doctest::Approx(-10));
}

TEST_CASE("effect statistics by hand")
{
    SUBCASE("EEs {2, 4}")
    {
        const EEResult r = summarize_effects({{2}, {4}});
        CHECK(r.factors[0].mu == 3);
        CHECK(r.factors[0].mu_star == 3);
        CHECK(r.factors[0].sigma == 2);
        CHECK(r.factors[0].rank == doctest::Approx(std::sqrt(11.0)));
    }
    SUBCASE("EEs {-2, 2} do not cancel in mu*")
    {
        const EEResult r = summarize_effects({{-2}, {2}});
        CHECK(r.factors[0].mu == 0);
        CHECK(r.factors[0].mu_star == 2);
        CHECK(r.factors[0].sigma == 8);
    }
    SUBCASE("one trajectory is not enough")
    {
        CHECK_THROWS_AS(summarize_effects({{1, 2}}), InputError);
    }
    SUBCASE("sorted by rank with original indices")
    {
        const EEResult r = summarize_effects({{1, -5, 3}, {1, -5, 3}});
        CHECK(r.order() == std::vector<int>{1, 2, 0});
    }
}

TEST_CASE("rank formula reproduces the reference ranks")
{
    const double cases[][3] = {{4.275, 5.255, 4.850}, {4.039, 3.246, 4.422}, {2.014, 2.881, 2.634},
                               {1.377, 1.667, 1.888}};
    for (const auto& c : cases) {
        CHECK(std::abs(std::sqrt(c[0] * c[0] + c[1]) - c[2]) < 0.005);
    }
}

TEST_CASE("oracle: linear model")
{
    const LevelGrid g{4, 6, 0.2};
    const std::vector<double> a{3.5, -2.0, 0.25, 7.0};
    const Model f = [&](const Point& x) { return a[0] * x[0] + a[1] * x[1] + a[2] * x[2] + a[3] * x[3]; };
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto ts    = generate_trajectories(g, 10, seed);
        const EEResult r = analyze(ts, tabulate(ts, g, f), g);
        for (const auto& fe : r.factors) {
            CHECK(std::abs(fe.mu - a[fe.index]) < 1e-12);
            CHECK(std::abs(fe.mu_star - std::abs(a[fe.index])) < 1e-12);
            CHECK(std::abs(fe.sigma) < 1e-12);
            CHECK(std::abs(fe.rank - std::abs(a[fe.index])) < 1e-12);
        }
        CHECK(r.order() == std::vector<int>{3, 0, 1, 2});
    }
}

TEST_CASE("oracle: interaction model")
{
    const LevelGrid g{4, 6, 0.2};
    const Model f = [](const Point& x) { return x[0] * x[1]; };
    const auto ts    = generate_trajectories(g, 20, 5);
    const EEResult r = analyze(ts, tabulate(ts, g, f), g);
    for (const auto& fe : r.factors) {
        if (fe.index == 0 || fe.index == 1) {
            CHECK(fe.sigma > 0);
        }
        else {
            CHECK(fe.mu_star == 0);
        }
    }
}

TEST_CASE("oracle: analyze equals the hand formula on a brute-force EE matrix")
{
    const LevelGrid g{4, 6, 0.2};
    const Model f = [](const Point& x) {
        return std::sin(3 * x[0]) * x[1] + x[2] * x[2] - 4 * x[3] + x[0] * x[3];
    };
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto ts = generate_trajectories(g, 12, seed);
        const auto m  = brute_force_effects(ts, g, f);
        const EEResult r = analyze(ts, tabulate(ts, g, f), g);
        const double n = static_cast<double>(m.size());
        for (const auto& fe : r.factors) {
            double mu = 0, mu_star = 0;
            for (const auto& row : m) {
                mu += row[fe.index];
                mu_star += std::abs(row[fe.index]);
            }
            mu /= n;
            mu_star /= n;
            double sigma = 0;
            for (const auto& row : m) {
                sigma += (row[fe.index] - mu) * (row[fe.index] - mu);
            }
            sigma /= n - 1;
            CHECK(std::abs(fe.mu - mu) < 1e-12);
            CHECK(std::abs(fe.mu_star - mu_star) < 1e-12);
            CHECK(std::abs(fe.sigma - sigma) < 1e-12 * std::max(1.0, sigma));
            CHECK(std::abs(fe.rank - std::sqrt(mu_star * mu_star + sigma)) < 1e-12 * std::max(1.0, fe.rank));
        }
    }
}

TEST_CASE("property: statistics invariants")
{
    const LevelGrid g{4, 6, 0.2};
    Rng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        const double c[4] = {rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const Model f = [&](const Point& x) {
            return c[0] * x[0] * x[1] + c[1] * x[2] + c[2] * x[3] * x[3] + c[3] * x[0];
        };
        const auto ts    = generate_trajectories(g, 8, 100 + trial);
        const EEResult r = analyze(ts, tabulate(ts, g, f), g);
        for (std::size_t i = 0; i < r.factors.size(); ++i) {
            const auto& fe = r.factors[i];
            CHECK(fe.mu_star >= std::abs(fe.mu) - 1e-12);
            CHECK(fe.sigma >= 0);
            CHECK(fe.rank * fe.rank == doctest::Approx(fe.mu_star * fe.mu_star + fe.sigma));
            if (i > 0) {
                CHECK(r.factors[i - 1].rank >= fe.rank);
            }
        }

        // relabeling the factors relabels the ranking
        const std::vector<int> perm{2, 0, 3, 1};
        std::vector<Trajectory> permuted = ts;
        for (auto& t : permuted) {
            for (auto& x : t.points) {
                Point y(4);
                for (int j = 0; j < 4; ++j) {
                    y[perm[j]] = x[j];
                }
                x = y;
            }
        }
        const Model fp = [&](const Point& y) {
            Point x(4);
            for (int j = 0; j < 4; ++j) {
                x[j] = y[perm[j]];
            }
            return f(x);
        };
        const EEResult rp = analyze(permuted, tabulate(permuted, g, fp), g);
        for (const auto& fe : r.factors) {
            const auto it = std::find_if(rp.factors.begin(), rp.factors.end(),
                                         [&](const FactorEffect& e) { return e.index == perm[fe.index]; });
            CHECK(it->rank == doctest::Approx(fe.rank));
        }
    }
}

TEST_CASE("missing outputs are reported")
{
    const LevelGrid g{4, 6, 0.2};
    const auto ts  = generate_trajectories(g, 3, 1);
    OutputTable out = tabulate(ts, g, [](const Point&) { return 1.0; });
    out.erase(point_key(ts[1].points[2], g));
    CHECK_THROWS_AS(analyze(ts, out, g), InputError);
    CHECK_THROWS_AS(analyze({ts[0]}, tabulate({ts[0]}, g, [](const Point&) { return 1.0; }), g), InputError);

    const EEResult flat = analyze(ts, tabulate(ts, g, [](const Point&) { return 7.0; }), g);
    for (const auto& fe : flat.factors) {
        CHECK(fe.mu == 0);
        CHECK(fe.mu_star == 0);
        CHECK(fe.sigma == 0);
        CHECK(fe.rank == 0);
    }
}

TEST_CASE("denormalize and factorial design")
{
    const FactorBounds b;
    CHECK(denormalize(Factor::SocialDistancing, 1.0, b) == 2.5);
    CHECK(denormalize(Factor::LockdownDelay, 0.2, b) == 12);
    CHECK(denormalize(Factor::MaskUsage, 0, b) == 0);
    CHECK(denormalize(Factor::Isolation, 0.6, b) == doctest::Approx(60));
    CHECK_THROWS_AS(denormalize(Factor::MaskUsage, 1.5, b), InputError);
    CHECK_THROWS_AS(denormalize(Factor::MaskUsage, -0.1, b), InputError);

    const LevelGrid g{4, 6, 0.2};
    const auto all = full_factorial(g);
    CHECK(all.size() == 1296);
    CHECK(all.front() == Point{0, 0, 0, 0});
    CHECK(all[1] == Point{0, 0, 0, 0.2});
    CHECK(all.back() == Point{1, 1, 1, 1});
    for (std::size_t i = 1; i < all.size(); ++i) {
        REQUIRE(point_key(all[i - 1], g) < point_key(all[i], g));
    }
    CHECK(full_factorial(LevelGrid{1, 2, 1.0}) == std::vector<Point>{{0}, {1}});

    std::set<PointKey> keys;
    for (const auto& x : all) {
        keys.insert(point_key(x, g));
    }
    for (const auto& x : trajectory_points(generate_trajectories(g, 30, 9))) {
        CHECK(keys.count(point_key(x, g)) == 1);
    }
    const auto natural = denormalize_point(all.back(), b);
    CHECK(natural == std::array<double, 4>{2.5, 100, 32, 100});
}

TEST_CASE("EE result CSV")
{
    const EEResult r = summarize_effects({{1, -5}, {3, -5}});
    std::ostringstream out;
    write_ee_csv(out, r, {"a", "b"});
    CHECK(out.str() == "factor,mu,mu_star,sigma,rank\n"
                       "b,-5.000000,5.000000,0.000000,5.000000\n"
                       "a,2.000000,2.000000,2.000000,2.449490\n");
}
