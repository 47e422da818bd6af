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

#include "episim/errors.h"
#include "episim/rng.h"
#include "episim/sweep.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace episim
{

namespace
{

constexpr double grid_tolerance = 1e-9;

std::string format_point(const Point& x)
{
    return fmt::format("({:g})", fmt::join(x, ", "));
}

} // namespace

void LevelGrid::validate() const
{
    if (k < 1) {
        throw ConfigError("k must be at least 1");
    }
    if (p < 2) {
        throw ConfigError("a level grid needs at least 2 levels");
    }
    const double steps = delta * (p - 1);
    if (!(delta > 0) || !(delta <= 1 + grid_tolerance) || std::abs(steps - std::round(steps)) > grid_tolerance) {
        throw ConfigError(fmt::format("delta {} is not a multiple of 1/{} within (0, 1]", delta, p - 1));
    }
}

int LevelGrid::step_levels() const
{
    return static_cast<int>(std::lround(delta * (p - 1)));
}

PointKey point_key(const Point& x, const LevelGrid& grid)
{
    PointKey key(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        key[i] = static_cast<int>(std::lround(x[i] * (grid.p - 1)));
    }
    return key;
}

std::vector<Trajectory> generate_trajectories(const LevelGrid& grid, int r, std::uint64_t seed)
{
    grid.validate();
    if (r < 1) {
        throw ConfigError("at least one trajectory is required");
    }
    const int s    = grid.step_levels();
    const int last = grid.p - 1;
    Rng rng(seed);

    std::vector<Trajectory> out;
    out.reserve(r);
    for (int t = 0; t < r; ++t) {
        // with s <= p-1 every level can step up or down, so the base is uniform over all levels
        std::vector<int> level(grid.k);
        for (int& l : level) {
            l = static_cast<int>(rng.below(grid.p));
        }
        std::vector<int> order(grid.k);
        std::iota(order.begin(), order.end(), 0);
        for (int i = grid.k - 1; i > 0; --i) {
            std::swap(order[i], order[rng.below(i + 1)]);
        }

        auto to_point = [&] {
            Point x(grid.k);
            for (int i = 0; i < grid.k; ++i) {
                x[i] = grid.value(level[i]);
            }
            return x;
        };
        Trajectory traj;
        traj.points.push_back(to_point());
        for (int i : order) {
            const bool up_ok   = level[i] + s <= last;
            const bool down_ok = level[i] - s >= 0;
            const bool up      = up_ok && down_ok ? rng.bernoulli(0.5) : up_ok;
            level[i] += up ? s : -s;
            traj.points.push_back(to_point());
        }
        out.push_back(std::move(traj));
    }
    return out;
}

std::optional<std::string> validate_trajectory(const Trajectory& t, const LevelGrid& grid)
{
    const auto& pts = t.points;
    if (pts.size() != static_cast<std::size_t>(grid.k) + 1) {
        return fmt::format("trajectory has {} points, expected {}", pts.size(), grid.k + 1);
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].size() != static_cast<std::size_t>(grid.k)) {
            return fmt::format("point {} has {} coordinates, expected {}", i, pts[i].size(), grid.k);
        }
    }

    std::vector<int> perturbed(grid.k, 0);
    for (std::size_t step = 1; step < pts.size(); ++step) {
        int changed = 0;
        int which   = -1;
        for (int j = 0; j < grid.k; ++j) {
            if (std::abs(pts[step][j] - pts[step - 1][j]) > grid_tolerance) {
                ++changed;
                which = j;
            }
        }
        if (changed != 1) {
            return fmt::format("step {} changes {} coordinates", step, changed);
        }
        const double size = std::abs(pts[step][which] - pts[step - 1][which]);
        if (std::abs(size - grid.delta) > grid_tolerance) {
            return fmt::format("step {}: off-grid step of {:g} (delta {:g})", step, size, grid.delta);
        }
        ++perturbed[which];
    }
    for (int j = 0; j < grid.k; ++j) {
        if (perturbed[j] != 1) {
            return fmt::format("coordinate {} perturbed {} times", j, perturbed[j]);
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (int j = 0; j < grid.k; ++j) {
            const double x      = pts[i][j];
            const double scaled = x * (grid.p - 1);
            if (x < -grid_tolerance || x > 1 + grid_tolerance || std::abs(scaled - std::round(scaled)) > 1e-6) {
                return fmt::format("point {} coordinate {} = {:g} is not on the level grid", i, j, x);
            }
        }
    }
    return std::nullopt;
}

std::vector<std::vector<double>> elementary_effects(const std::vector<Trajectory>& trajectories,
                                                    const OutputTable& outputs, const LevelGrid& grid)
{
    auto output_at = [&](const Point& x) {
        auto it = outputs.find(point_key(x, grid));
        if (it == outputs.end()) {
            throw InputError(fmt::format("no output for point {}", format_point(x)));
        }
        return it->second;
    };

    std::vector<std::vector<double>> effects;
    effects.reserve(trajectories.size());
    for (std::size_t t = 0; t < trajectories.size(); ++t) {
        if (auto bad = validate_trajectory(trajectories[t], grid)) {
            throw InputError(fmt::format("trajectory {}: {}", t, *bad));
        }
        const auto& pts = trajectories[t].points;
        std::vector<double> row(grid.k, 0);
        for (std::size_t step = 1; step < pts.size(); ++step) {
            int j = 0;
            while (std::abs(pts[step][j] - pts[step - 1][j]) <= grid_tolerance) {
                ++j;
            }
            const int sign = pts[step][j] > pts[step - 1][j] ? 1 : -1;
            row[j] = elementary_effect(output_at(pts[step]), output_at(pts[step - 1]), grid.delta, sign);
        }
        effects.push_back(std::move(row));
    }
    return effects;
}

std::vector<int> EEResult::order() const
{
    std::vector<int> out;
    for (const auto& f : factors) {
        out.push_back(f.index);
    }
    return out;
}

EEResult summarize_effects(const std::vector<std::vector<double>>& effects)
{
    const int r = static_cast<int>(effects.size());
    if (r < 2) {
        throw InputError("at least two trajectories are needed for sigma");
    }
    const int k = static_cast<int>(effects.front().size());
    EEResult result;
    result.r = r;
    for (int i = 0; i < k; ++i) {
        FactorEffect f;
        f.index = i;
        for (const auto& row : effects) {
            f.mu += row[i];
            f.mu_star += std::abs(row[i]);
        }
        f.mu /= r;
        f.mu_star /= r;
        for (const auto& row : effects) {
            f.sigma += (row[i] - f.mu) * (row[i] - f.mu);
        }
        f.sigma /= r - 1;
        f.rank = std::sqrt(f.mu_star * f.mu_star + f.sigma);
        result.factors.push_back(f);
    }
    std::stable_sort(result.factors.begin(), result.factors.end(),
                     [](const FactorEffect& a, const FactorEffect& b) { return a.rank > b.rank; });
    return result;
}

EEResult analyze(const std::vector<Trajectory>& trajectories, const OutputTable& outputs, const LevelGrid& grid)
{
    grid.validate();
    if (trajectories.size() < 2) {
        throw InputError("at least two trajectories are needed for sigma");
    }
    return summarize_effects(elementary_effects(trajectories, outputs, grid));
}

void write_ee_csv(std::ostream& out, const EEResult& result, const std::vector<std::string>& names)
{
    out << "factor,mu,mu_star,sigma,rank\n";
    for (const auto& f : result.factors) {
        const std::string name =
            f.index < static_cast<int>(names.size()) ? names[f.index] : fmt::format("x{}", f.index + 1);
        out << fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f}\n", name, f.mu, f.mu_star, f.sigma, f.rank);
    }
}

double denormalize(Factor f, double x, const FactorBounds& bounds)
{
    if (!(x >= -grid_tolerance && x <= 1 + grid_tolerance)) {
        throw InputError(fmt::format("standardized value {} outside [0, 1]", x));
    }
    x = std::clamp(x, 0.0, 1.0);
    const Bounds& b = bounds[f];
    const double v  = b.min + x * (b.max - b.min);
    return f == Factor::LockdownDelay ? std::round(v) : v;
}

std::vector<Point> full_factorial(const LevelGrid& grid)
{
    grid.validate();
    std::vector<Point> out;
    std::vector<int> level(grid.k, 0);
    while (true) {
        Point x(grid.k);
        for (int i = 0; i < grid.k; ++i) {
            x[i] = grid.value(level[i]);
        }
        out.push_back(std::move(x));
        int i = grid.k - 1;
        while (i >= 0 && ++level[i] == grid.p) {
            level[i--] = 0;
        }
        if (i < 0) {
            break;
        }
    }
    return out;
}

std::array<double, num_factors> denormalize_point(const Point& x, const FactorBounds& bounds)
{
    if (x.size() != static_cast<std::size_t>(num_factors)) {
        throw InputError(fmt::format("intervention points have {} coordinates, got {}", num_factors, x.size()));
    }
    std::array<double, num_factors> v{};
    for (Factor f : all_factors) {
        const int i = static_cast<int>(f);
        v[i]        = denormalize(f, x[i], bounds);
    }
    return v;
}

std::vector<Point> trajectory_points(const std::vector<Trajectory>& trajectories)
{
    std::vector<Point> out;
    for (const auto& t : trajectories) {
        out.insert(out.end(), t.points.begin(), t.points.end());
    }
    return out;
}

OutputTable evaluate_points(const std::vector<Point>& points, const LevelGrid& grid, const FactorBounds& bounds,
                            ResultCache& cache, std::uint64_t sim_seed, int workers, int replicates,
                            EvaluationStats* stats)
{
    if (replicates < 1) {
        throw ConfigError("replicates must be at least 1");
    }
    std::map<PointKey, Point> unique;
    for (const auto& x : points) {
        unique.emplace(point_key(x, grid), x);
    }

    const SimConfig& base        = cache.base();
    const std::int64_t max_ticks = static_cast<std::int64_t>(base.max_days) * base.ticks_per_day;
    std::vector<Job> jobs;
    jobs.reserve(unique.size() * replicates);
    for (const auto& [key, x] : unique) {
        const SimConfig config = cache.config_for(denormalize_point(x, bounds));
        for (int m = 0; m < replicates; ++m) {
            jobs.push_back(Job{static_cast<std::int64_t>(jobs.size()), config, sim_seed + m, max_ticks});
        }
    }
    const BatchReport report = run_batch(jobs, workers, &cache);

    OutputTable outputs;
    std::size_t j = 0;
    for (const auto& [key, x] : unique) {
        std::vector<double> peaks;
        for (int m = 0; m < replicates; ++m, ++j) {
            const auto& rec = report.records[j];
            if (!rec.ok) {
                throw InputError(fmt::format("simulation at {} failed: {}", format_point(x), rec.error));
            }
            peaks.push_back(rec.outcome.peak_pct);
        }
        outputs[key] = median(peaks);
    }
    if (stats != nullptr) {
        stats->points          = unique.size();
        stats->simulations_run = report.simulations_run;
        stats->cache_hits      = report.cache_hits;
    }
    return outputs;
}

} // namespace episim
