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

#ifndef EPISIM_FACTORS_H
#define EPISIM_FACTORS_H

#include "episim/config.h"

#include <array>
#include <string_view>

namespace episim
{

/// The four intervention controls studied by the sensitivity analyses.
enum class Factor
{
    SocialDistancing,
    MaskUsage,
    LockdownDelay,
    Isolation,
    Count
};

inline constexpr int num_factors = static_cast<int>(Factor::Count);

inline constexpr std::array<Factor, num_factors> all_factors = {Factor::SocialDistancing, Factor::MaskUsage,
                                                                Factor::LockdownDelay, Factor::Isolation};

/// Short name used on the command line and in CSV output.
std::string_view factor_name(Factor f);

/// Accepts the short names and the matching config keys. Throws ConfigError.
Factor parse_factor(std::string_view name);

struct Bounds {
    double min;
    double max;
};

/// Natural-unit bounds for each factor.
struct FactorBounds {
    std::array<Bounds, num_factors> bounds = {{{0, 2.5}, {0, 100}, {7, 32}, {0, 100}}};

    const Bounds& operator[](Factor f) const
    {
        return bounds[static_cast<int>(f)];
    }
    void validate() const;
};

/// Set the factor in a config. Setting the lockdown delay also enables lockdown.
void apply_factor(SimConfig& config, Factor f, double value);

/// Current value of the factor in a config.
double factor_value(const SimConfig& config, Factor f);

} // namespace episim

#endif // EPISIM_FACTORS_H
