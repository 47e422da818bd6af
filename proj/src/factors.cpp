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

#include <fmt/format.h>

namespace episim
{

std::string_view factor_name(Factor f)
{
    switch (f) {
    case Factor::SocialDistancing:
        return "social_distancing";
    case Factor::MaskUsage:
        return "mask_usage";
    case Factor::LockdownDelay:
        return "lockdown_delay";
    case Factor::Isolation:
        return "isolation";
    default:
        return "?";
    }
}

Factor parse_factor(std::string_view name)
{
    if (name == "social_distancing" || name == "social_distancing_m" || name == "sd") {
        return Factor::SocialDistancing;
    }
    if (name == "mask_usage" || name == "mask_usage_rate" || name == "mask" || name == "masks") {
        return Factor::MaskUsage;
    }
    if (name == "lockdown_delay" || name == "lockdown_delay_days") {
        return Factor::LockdownDelay;
    }
    if (name == "isolation" || name == "isolation_rate") {
        return Factor::Isolation;
    }
    throw ConfigError(fmt::format("unknown parameter '{}'", name));
}

void FactorBounds::validate() const
{
    for (Factor f : all_factors) {
        if (!((*this)[f].min < (*this)[f].max)) {
            throw ConfigError(fmt::format("bounds for {} must satisfy min < max", factor_name(f)));
        }
    }
}

void apply_factor(SimConfig& config, Factor f, double value)
{
    auto& iv = config.interventions;
    switch (f) {
    case Factor::SocialDistancing:
        iv.social_distancing_m = value;
        break;
    case Factor::MaskUsage:
        iv.mask_usage_rate = value;
        break;
    case Factor::LockdownDelay:
        iv.lockdown_enabled    = true;
        iv.lockdown_delay_days = value;
        break;
    case Factor::Isolation:
        iv.isolation_rate = value;
        break;
    default:
        break;
    }
}

double factor_value(const SimConfig& config, Factor f)
{
    const auto& iv = config.interventions;
    switch (f) {
    case Factor::SocialDistancing:
        return iv.social_distancing_m;
    case Factor::MaskUsage:
        return iv.mask_usage_rate;
    case Factor::LockdownDelay:
        return iv.lockdown_delay_days;
    case Factor::Isolation:
        return iv.isolation_rate;
    default:
        return 0;
    }
}

} // namespace episim
