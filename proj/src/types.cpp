// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/types.hpp"

namespace aghetnet
{
std::string_view to_string(Tier tier)
{
    switch (tier)
    {
        case Tier::Mbs: return "mbs";
        case Tier::Pbs: return "pbs";
        case Tier::Uabs: return "uabs";
        case Tier::Gue: return "gue";
        case Tier::Aue: return "aue";
    }
    return "unknown";
}

std::optional<Tier> tier_from_string(std::string_view name)
{
    for (Tier t : {Tier::Mbs, Tier::Pbs, Tier::Uabs, Tier::Gue, Tier::Aue})
    {
        if (to_string(t) == name)
        {
            return t;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Subframe sf)
{
    return sf == Subframe::Usf ? "usf" : "csf";
}
}  // namespace aghetnet
