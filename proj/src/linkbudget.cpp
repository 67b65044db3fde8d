// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/linkbudget.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace aghetnet
{
namespace
{
double ratio(double num, double den, double floor_mw)
{
    if (num == 0)
    {
        return 0;
    }
    return num / std::max(den, floor_mw);
}
}  // namespace

LinkBudget received_power(const Node& bs,
                          const Node& ue,
                          double tx_power_dbm,
                          const ChannelParams& channel,
                          Xoshiro256& rng)
{
    LinkBudget lb;
    lb.bs_index = bs.index;
    lb.bs_tier = bs.tier;
    lb.link_class = classify_link(bs.tier, ue.tier);
    lb.geometry = LinkGeometry::between(bs.pos, ue.pos);

    const double u = rng.uniform_open();
    const bool expected = channel.los_mode == LosMode::Expected;
    switch (lb.link_class)
    {
        case LinkClass::Gtg:
            lb.pl_db = pl_gtg(lb.geometry, channel, bs.pos.z, ue.pos.z);
            lb.los = false;
            break;
        case LinkClass::Ata:
        {
            const double p = ata_los_probability(lb.geometry.d2_m, ue.pos.z);
            lb.los = u < p;
            const double los_db = ata_pl_los_db(lb.geometry.d3_m, channel.carrier_mhz);
            const double nlos_db
                = ata_pl_nlos_db(lb.geometry.d3_m, ue.pos.z, channel.carrier_mhz);
            lb.pl_db = expected ? p * los_db + (1.0 - p) * nlos_db
                                : (lb.los ? los_db : nlos_db);
            break;
        }
        case LinkClass::Atg:
        {
            if (!(lb.geometry.elevation_deg > 0))
            {
                throw ParameterError("ATG link needs the UE below the UABS");
            }
            const double p = atg_los_probability(lb.geometry.elevation_deg, channel);
            lb.los = u < p;
            const double los_db = atg_branch_db(lb.geometry.d3_m, true, channel);
            const double nlos_db = atg_branch_db(lb.geometry.d3_m, false, channel);
            lb.pl_db = expected ? p * los_db + (1.0 - p) * nlos_db
                                : (lb.los ? los_db : nlos_db);
            break;
        }
    }

    lb.antenna_db = antenna_gain(lb.geometry.azimuth_deg,
                                 lb.geometry.elevation_deg,
                                 channel.antenna_for(bs.tier));
    lb.fading = channel.fading
                    ? nakagami_power_gain(lb.los ? channel.m_los : channel.m_nlos, rng)
                    : 1.0;
    lb.rx_power_mw = db_to_linear(tx_power_dbm + lb.antenna_db - lb.pl_db) * lb.fading;
    return lb;
}

std::size_t NearestCells::of(Tier bs_tier) const
{
    switch (bs_tier)
    {
        case Tier::Mbs: return moi;
        case Tier::Pbs: return poi;
        case Tier::Uabs: return uoi;
        default: throw ParameterError("nearest cell requested for a user tier");
    }
}

NearestCells nearest_cells(const Position& ue, const NetworkLayout& layout)
{
    auto nearest = [&ue](const std::vector<Position>& bss, Tier tier) {
        if (bss.empty())
        {
            throw ConfigError("tier " + std::string(to_string(tier))
                              + " has no base stations");
        }
        std::size_t best = 0;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < bss.size(); ++i)
        {
            const double dx = bss[i].x - ue.x;
            const double dy = bss[i].y - ue.y;
            const double dz = bss[i].z - ue.z;
            const double d2 = dx * dx + dy * dy + dz * dz;
            if (d2 < best_d2)
            {
                best_d2 = d2;
                best = i;
            }
        }
        return best;
    };
    return {nearest(layout.mbs, Tier::Mbs),
            nearest(layout.pbs, Tier::Pbs),
            nearest(layout.uabs, Tier::Uabs)};
}

TierInterference interference_by_tier(const Node& ue,
                                      const NetworkLayout& layout,
                                      const NearestCells& nearest,
                                      const ChannelParams& channel,
                                      const LinkStreams& streams)
{
    TierInterference out;
    for (Tier tier : {Tier::Mbs, Tier::Pbs, Tier::Uabs})
    {
        const auto& bss = layout.nodes(tier);
        const double tx = layout.tx_power(tier);
        const std::size_t skip = nearest.of(tier);
        double& sum = tier == Tier::Mbs ? out.mbs : tier == Tier::Pbs ? out.pbs : out.uabs;
        for (std::size_t i = 0; i < bss.size(); ++i)
        {
            if (i == skip)
            {
                continue;
            }
            auto rng = streams.for_bs(tier, i);
            sum += received_power({tier, i, bss[i]}, ue, tx, channel, rng).rx_power_mw;
        }
    }
    return out;
}

double aggregate_interference(const Node& ue,
                              const NetworkLayout& layout,
                              const NearestCells& nearest,
                              const ChannelParams& channel,
                              const LinkStreams& streams)
{
    return interference_by_tier(ue, layout, nearest, channel, streams).total();
}

ServingPowers serving_powers(const Node& ue,
                             const NetworkLayout& layout,
                             const NearestCells& nearest,
                             const ChannelParams& channel,
                             const LinkStreams& streams)
{
    auto serving = [&](Tier tier) {
        const std::size_t i = nearest.of(tier);
        auto rng = streams.for_bs(tier, i);
        return received_power({tier, i, layout.nodes(tier)[i]}, ue,
                              layout.tx_power(tier), channel, rng)
            .rx_power_mw;
    };
    ServingPowers p;
    p.r_mbs = serving(Tier::Mbs);
    p.r_pbs = serving(Tier::Pbs);
    p.r_uabs = serving(Tier::Uabs);
    p.interference = interference_by_tier(ue, layout, nearest, channel, streams);
    return p;
}

void IcicState::validate() const
{
    auto unit = [](double v, const char* name) {
        if (!(v >= 0 && v <= 1))
        {
            throw ParameterError(std::string(name) + " must lie in [0, 1]");
        }
    };
    unit(alpha_mbs, "alpha_mbs");
    unit(alpha_pbs, "alpha_pbs");
    unit(beta_mbs, "beta_mbs");
    unit(beta_pbs, "beta_pbs");
    if (!(tau_pbs_db >= 0) || !(tau_uabs_db >= 0))
    {
        throw ParameterError("range expansion biases must be >= 0 dB");
    }
}

double IcicState::rho_db(Tier bs_tier) const
{
    switch (bs_tier)
    {
        case Tier::Mbs: return rho_mbs_db;
        case Tier::Pbs: return rho_pbs_db;
        case Tier::Uabs: return rho_uabs_db;
        default: throw ParameterError("scheduling threshold requested for a user tier");
    }
}

double SirSextet::usf(Tier bs_tier) const
{
    switch (bs_tier)
    {
        case Tier::Mbs: return mbs_usf;
        case Tier::Pbs: return pbs_usf;
        case Tier::Uabs: return uabs_usf;
        default: throw ParameterError("SIR requested for a user tier");
    }
}

double SirSextet::csf(Tier bs_tier) const
{
    switch (bs_tier)
    {
        case Tier::Mbs: return mbs_csf;
        case Tier::Pbs: return pbs_csf;
        case Tier::Uabs: return uabs_csf;
        default: throw ParameterError("SIR requested for a user tier");
    }
}

const char* to_string(CsfAlignment a)
{
    return a == CsfAlignment::Network ? "network" : "nearest";
}

CsfAlignment csf_alignment_from_string(const std::string& s)
{
    if (s == "nearest")
    {
        return CsfAlignment::NearestCells;
    }
    if (s == "network")
    {
        return CsfAlignment::Network;
    }
    throw ParameterError("unknown CSF alignment '" + s + "' (expected nearest|network)");
}

SirSextet sir_sextet(const ServingPowers& p, const IcicState& s, const SirOptions& o)
{
    const double rm = p.r_mbs;
    const double rp = p.r_pbs;
    const double ru = p.r_uabs;
    const double ia = p.i_agg();
    const double ic = csf_interference(p.interference, s, o.alignment);
    const double f = o.floor_mw;
    SirSextet g;
    g.mbs_usf = ratio(rm, rp + ru + ia, f);
    g.mbs_csf = ratio(s.alpha_mbs * rm, s.alpha_pbs * rp + ru + ic, f);
    g.pbs_usf = ratio(rp, rm + ru + ia, f);
    g.pbs_csf = ratio(s.alpha_pbs * rp, s.alpha_mbs * rm + ru + ic, f);
    g.uabs_usf = ratio(ru, rm + rp + ia, f);
    g.uabs_csf = ratio(ru, s.alpha_mbs * rm + s.alpha_pbs * rp + ic, f);
    return g;
}

}  // namespace aghetnet
