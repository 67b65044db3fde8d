// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/scenario.hpp"

#include <string>

namespace aghetnet
{
Scenario Scenario::reference(double uabs_height_m)
{
    Scenario s;
    s.area = SimArea::square_km2(100.0);
    s.tiers = {
        {Tier::Mbs, Placement::Ppp, 4.0, 0, 46.0, 36.0},
        {Tier::Pbs, Placement::Ppp, 12.0, 0, 30.0, 15.0},
        {Tier::Uabs, Placement::HexGrid, 0.0, 60, 26.0, uabs_height_m},
        {Tier::Gue, Placement::Ppp, 100.0, 0, 0.0, 1.5},
        {Tier::Aue, Placement::Ppp, 1.8, 0, 0.0, 22.5},
    };
    return s;
}

Scenario Scenario::desk(double area_km2, int uabs_count, double uabs_height_m)
{
    Scenario s = reference(uabs_height_m);
    s.area = SimArea::square_km2(area_km2);
    s.tier(Tier::Uabs).count = uabs_count;
    return s;
}

TierSpec& Scenario::tier(Tier t)
{
    for (auto& spec : tiers)
    {
        if (spec.tier == t)
        {
            return spec;
        }
    }
    throw ConfigError("scenario has no spec for tier " + std::string(to_string(t)));
}

const TierSpec& Scenario::tier(Tier t) const
{
    return const_cast<Scenario&>(*this).tier(t);
}

void Scenario::validate() const
{
    area.validate();
    channel.validate();
    std::array<int, 5> seen{};
    for (const auto& spec : tiers)
    {
        spec.validate();
        ++seen[static_cast<std::size_t>(spec.tier)];
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
    {
        if (seen[i] != 1)
        {
            throw ConfigError("tier " + std::string(to_string(static_cast<Tier>(i)))
                              + " must be specified exactly once");
        }
    }
    if (!(probe_resolution_m > 0))
    {
        throw ConfigError("probe grid resolution must be > 0");
    }
    if (!(threshold_se >= 0))
    {
        throw ConfigError("coverage threshold must be >= 0");
    }
}

}  // namespace aghetnet
