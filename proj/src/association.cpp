// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/association.hpp"

#include <numeric>

namespace aghetnet
{
namespace
{
std::size_t tier_slot(Tier bs_tier)
{
    if (!is_base_station(bs_tier))
    {
        throw ParameterError("cell load requested for a user tier");
    }
    return static_cast<std::size_t>(bs_tier);
}
}  // namespace

const char* to_string(SchedulingRule r)
{
    switch (r)
    {
        case SchedulingRule::ServingSir: return "serving-sir";
        case SchedulingRule::MacroCenter: return "macro-center";
        case SchedulingRule::ReducedPowerCenter: return "reduced-power-center";
    }
    return "?";
}

SchedulingRule scheduling_rule_from_string(const std::string& s)
{
    for (auto r : {SchedulingRule::ServingSir, SchedulingRule::MacroCenter,
                   SchedulingRule::ReducedPowerCenter})
    {
        if (s == to_string(r))
        {
            return r;
        }
    }
    throw ParameterError("unknown scheduling rule '" + s
                         + "' (expected serving-sir|macro-center|reduced-power-center)");
}

CellSelection select_cell(const SirSextet& sir, const IcicState& state)
{
    const double m = linear_to_db(sir.mbs_usf);
    const double p = linear_to_db(sir.pbs_usf) + state.tau_pbs_db;
    const double u = linear_to_db(sir.uabs_usf) + state.tau_uabs_db;
    CellSelection sel{Tier::Mbs, m};
    if (p > sel.biased_metric_db)
    {
        sel = {Tier::Pbs, p};
    }
    if (u > sel.biased_metric_db)
    {
        sel = {Tier::Uabs, u};
    }
    return sel;
}

Subframe schedule_subframe(Tier serving_tier,
                           const SirSextet& sir,
                           const IcicState& state,
                           SchedulingRule rule)
{
    const double rho = state.rho_db(serving_tier);
    const bool center = serving_tier == Tier::Mbs
                            ? rule != SchedulingRule::ServingSir
                            : serving_tier == Tier::Pbs
                                  && rule == SchedulingRule::ReducedPowerCenter;
    if (center)
    {
        return linear_to_db(sir.csf(serving_tier)) >= rho ? Subframe::Csf
                                                          : Subframe::Usf;
    }
    return linear_to_db(sir.usf(serving_tier)) >= rho ? Subframe::Usf
                                                      : Subframe::Csf;
}

CellLoads::CellLoads(std::size_t n_mbs, std::size_t n_pbs, std::size_t n_uabs)
{
    const std::array<std::size_t, 3> n{n_mbs, n_pbs, n_uabs};
    for (std::size_t t = 0; t < 3; ++t)
    {
        counts_[t][0].assign(n[t], 0);
        counts_[t][1].assign(n[t], 0);
    }
}

const std::vector<int>& CellLoads::slot(Tier bs_tier, Subframe sf) const
{
    return counts_[tier_slot(bs_tier)][sf == Subframe::Usf ? 0 : 1];
}

std::vector<int>& CellLoads::slot(Tier bs_tier, Subframe sf)
{
    return counts_[tier_slot(bs_tier)][sf == Subframe::Usf ? 0 : 1];
}

void CellLoads::add(Tier bs_tier, std::size_t cell, Subframe sf)
{
    ++slot(bs_tier, sf).at(cell);
}

int CellLoads::count(Tier bs_tier, std::size_t cell, Subframe sf) const
{
    return slot(bs_tier, sf).at(cell);
}

int CellLoads::tier_total(Tier bs_tier, Subframe sf) const
{
    const auto& v = slot(bs_tier, sf);
    return std::accumulate(v.begin(), v.end(), 0);
}

int CellLoads::total() const
{
    int sum = 0;
    for (Tier t : {Tier::Mbs, Tier::Pbs, Tier::Uabs})
    {
        sum += tier_total(t, Subframe::Usf) + tier_total(t, Subframe::Csf);
    }
    return sum;
}

std::size_t CellLoads::cells(Tier bs_tier) const
{
    return counts_[tier_slot(bs_tier)][0].size();
}

UeAssignment associate(std::size_t ue_index,
                       const ServingPowers& powers,
                       const NearestCells& nearest,
                       const IcicState& state,
                       SchedulingRule rule,
                       const SirOptions& sir_options)
{
    UeAssignment a;
    a.ue_index = ue_index;
    a.sir = sir_sextet(powers, state, sir_options);
    const CellSelection sel = select_cell(a.sir, state);
    a.serving_tier = sel.serving_tier;
    a.biased_metric_db = sel.biased_metric_db;
    a.serving_cell = nearest.of(sel.serving_tier);
    a.subframe = schedule_subframe(sel.serving_tier, a.sir, state, rule);
    return a;
}

Association associate_all(std::span<const ServingPowers> powers,
                          std::span<const NearestCells> nearest,
                          const NetworkLayout& layout,
                          const IcicState& state,
                          SchedulingRule rule,
                          const SirOptions& sir_options)
{
    if (powers.size() != nearest.size())
    {
        throw ParameterError("link table columns differ in length");
    }
    Association out;
    out.loads = CellLoads(layout.mbs.size(), layout.pbs.size(), layout.uabs.size());
    out.assignments.reserve(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i)
    {
        auto a = associate(i, powers[i], nearest[i], state, rule, sir_options);
        out.loads.add(a.serving_tier, a.serving_cell, a.subframe);
        out.assignments.push_back(a);
    }
    return out;
}

Association associate_all(const NetworkLayout& layout,
                          const IcicState& state,
                          const ChannelParams& channel,
                          std::uint64_t seed,
                          std::uint64_t trial,
                          SchedulingRule rule,
                          const SirOptions& sir_options)
{
    std::vector<ServingPowers> powers;
    std::vector<NearestCells> nearest;
    std::uint64_t receiver = 0;
    for (Tier ue_tier : {Tier::Gue, Tier::Aue})
    {
        const auto& ues = layout.nodes(ue_tier);
        for (std::size_t i = 0; i < ues.size(); ++i, ++receiver)
        {
            const Node ue{ue_tier, i, ues[i]};
            const LinkStreams streams{seed, StreamTag::UeLinks, trial, receiver};
            nearest.push_back(nearest_cells(ue.pos, layout));
            powers.push_back(
                serving_powers(ue, layout, nearest.back(), channel, streams));
        }
    }
    return associate_all(powers, nearest, layout, state, rule, sir_options);
}

}  // namespace aghetnet
