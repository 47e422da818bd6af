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

#ifndef EPISIM_MORRIS_H
#define EPISIM_MORRIS_H

#include "episim/batch.h"
#include "episim/factors.h"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace episim
{

/// Standardized p-level grid {0, 1/(p-1), ..., 1} over k factors with step delta.
struct LevelGrid {
    int k        = num_factors;
    int p        = 6;
    double delta = 0.2;

    /// Throws ConfigError unless delta is a positive integer multiple of 1/(p-1) not above 1.
    void validate() const;
    /// delta expressed in grid levels.
    int step_levels() const;
    double value(int level) const
    {
        return level / static_cast<double>(p - 1);
    }
};

using Point = std::vector<double>;

/// k+1 standardized points; each step moves one coordinate by +-delta.
struct Trajectory {
    std::vector<Point> points;
};

/// Integer level coordinates of a point, used as the output table key.
using PointKey = std::vector<int>;
PointKey point_key(const Point& x, const LevelGrid& grid);

using OutputTable = std::map<PointKey, double>;

/**
 * r random trajectories: uniform base on the levels admitting a step,
 * random perturbation order, random sign where both directions stay in [0, 1].
 */
std::vector<Trajectory> generate_trajectories(const LevelGrid& grid, int r, std::uint64_t seed);

/// nullopt if valid, otherwise the first violation found.
std::optional<std::string> validate_trajectory(const Trajectory& t, const LevelGrid& grid);

/// Direction-corrected finite difference: sign * (y_after - y_before) / delta.
inline double elementary_effect(double y_after, double y_before, double delta, int sign)
{
    return sign * (y_after - y_before) / delta;
}

/// r x k matrix of elementary effects. Throws InputError naming a point with no output.
std::vector<std::vector<double>> elementary_effects(const std::vector<Trajectory>& trajectories,
                                                    const OutputTable& outputs, const LevelGrid& grid);

struct FactorEffect {
    int index      = 0;
    double mu      = 0;
    double mu_star = 0;
    double sigma   = 0; ///< sum of squared deviations over r-1 (a variance)
    double rank    = 0; ///< sqrt(mu_star^2 + sigma)
};

struct EEResult {
    int r = 0;
    std::vector<FactorEffect> factors; ///< sorted by rank, descending

    /// Factor indices in rank order.
    std::vector<int> order() const;
};

/// Statistics of an r x k effect matrix. Throws InputError when r < 2.
EEResult summarize_effects(const std::vector<std::vector<double>>& effects);

EEResult analyze(const std::vector<Trajectory>& trajectories, const OutputTable& outputs, const LevelGrid& grid);

/// `factor,mu,mu_star,sigma,rank`, one row per factor in rank order.
void write_ee_csv(std::ostream& out, const EEResult& result, const std::vector<std::string>& names);

/// min + x (max - min); lockdown delay rounded to whole days. Throws InputError outside [0, 1].
double denormalize(Factor f, double x, const FactorBounds& bounds);

/// All p^k standardized points in lexicographic order.
std::vector<Point> full_factorial(const LevelGrid& grid);

/// Natural factor values for a standardized intervention point (k must be 4).
std::array<double, num_factors> denormalize_point(const Point& x, const FactorBounds& bounds);

/**
 * Peak active_pct for each distinct point, through `cache`: hits are reused,
 * misses are simulated on `workers` threads and stored. With replicates > 1
 * the output is the median over seeds sim_seed, sim_seed + 1, ...
 */
struct EvaluationStats {
    std::size_t points          = 0;
    std::size_t simulations_run = 0;
    std::size_t cache_hits      = 0;
};
OutputTable evaluate_points(const std::vector<Point>& points, const LevelGrid& grid, const FactorBounds& bounds,
                            ResultCache& cache, std::uint64_t sim_seed, int workers, int replicates = 1,
                            EvaluationStats* stats = nullptr);

/// Every point visited by a set of trajectories.
std::vector<Point> trajectory_points(const std::vector<Trajectory>& trajectories);

} // namespace episim

#endif // EPISIM_MORRIS_H
