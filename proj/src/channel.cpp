// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

#include "aghetnet/deployment.hpp"

namespace aghetnet
{
namespace
{
constexpr double kSpeedOfLight = 299792458.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Aerial-UE rows of the UMa-AV tables apply from this height up.
constexpr double kAerialMinHeightM = 22.5;
constexpr double kAerialMaxHeightM = 100.0;

double hata_mobile_correction(double ue_height_m)
{
    const double t = std::log10(11.75 * ue_height_m);
    return 3.2 * t * t - 4.97;
}

double wrap_azimuth(double deg)
{
    double a = std::fmod(deg + 180.0, 360.0);
    if (a < 0)
    {
        a += 360.0;
    }
    return a - 180.0;
}
}  // namespace

void AntennaParams::validate() const
{
    if (!(theta_3db_deg > 0) || !(phi_3db_deg > 0))
    {
        throw ParameterError("antenna beamwidths must be > 0");
    }
    if (!(sla_v_db > 0) || !(a_max_db > 0))
    {
        throw ParameterError("antenna sidelobe limits must be > 0");
    }
}

void ChannelParams::validate() const
{
    if (!(carrier_mhz > 0))
    {
        throw ParameterError("carrier frequency must be > 0");
    }
    if (!(m_los >= 1))
    {
        throw ParameterError("m_los must be >= 1");
    }
    if (!(m_nlos >= 0.5))
    {
        throw ParameterError("m_nlos must be >= 0.5");
    }
    if (!(atg_los_a > 0) || !(atg_los_b > 0))
    {
        throw ParameterError("ATG sigmoid parameters must be > 0");
    }
    if (!(atg_pl_exponent_los > 0) || !(atg_pl_exponent_nlos > 0))
    {
        throw ParameterError("ATG path-loss exponents must be > 0");
    }
    antenna.validate();
}

std::vector<std::string> ChannelParams::warnings() const
{
    std::vector<std::string> out;
    if (carrier_mhz < 150 || carrier_mhz > 1500)
    {
        out.emplace_back("carrier frequency outside the 150-1500 MHz Hata "
                         "validity range");
    }
    return out;
}

AntennaParams ChannelParams::antenna_for(Tier bs_tier) const
{
    AntennaParams a = antenna;
    if (bs_tier == Tier::Uabs)
    {
        a.downtilt_deg = uabs_downtilt_deg;
    }
    return a;
}

LinkGeometry LinkGeometry::between(const Position& bs, const Position& ue)
{
    LinkGeometry g;
    const double dx = ue.x - bs.x;
    const double dy = ue.y - bs.y;
    const double dh = bs.z - ue.z;
    g.d2_m = std::max(std::hypot(dx, dy), kMinLinkDistanceM);
    g.d3_m = std::sqrt(g.d2_m * g.d2_m + dh * dh);
    g.elevation_deg = std::atan2(dh, g.d2_m) * kRadToDeg;
    g.azimuth_deg = 0.0;
    return g;
}

std::string_view to_string(LinkClass c)
{
    switch (c)
    {
        case LinkClass::Gtg: return "GTG";
        case LinkClass::Ata: return "ATA";
        case LinkClass::Atg: return "ATG";
    }
    return "unknown";
}

LinkClass classify_link(Tier bs_tier, Tier ue_tier)
{
    if (!is_base_station(bs_tier) || is_base_station(ue_tier))
    {
        throw ClassificationError("link must run from a base station to a UE");
    }
    if (ue_tier == Tier::Aue)
    {
        return LinkClass::Ata;
    }
    return bs_tier == Tier::Uabs ? LinkClass::Atg : LinkClass::Gtg;
}

double pl_gtg(const LinkGeometry& geom,
              const ChannelParams& params,
              double bs_height_m,
              double ue_height_m)
{
    if (!(geom.d2_m > 0))
    {
        throw ParameterError("GTG path loss needs a positive horizontal distance");
    }
    const double log_hb = std::log10(bs_height_m);
    const double d_km = geom.d2_m * 1e-3;
    return 69.55 + 26.16 * std::log10(params.carrier_mhz) - 13.82 * log_hb
           - hata_mobile_correction(ue_height_m)
           + (44.9 - 6.55 * log_hb) * std::log10(d_km);
}

double ata_los_probability(double d2_m, double ue_height_m)
{
    const double log_h = std::log10(ue_height_m);
    const double d1 = std::max(460.0 * log_h - 700.0, 18.0);
    const double p1 = 4300.0 * log_h - 3800.0;
    if (d2_m <= d1)
    {
        return 1.0;
    }
    return d1 / d2_m + std::exp(-d2_m / p1) * (1.0 - d1 / d2_m);
}

double ata_pl_los_db(double d3_m, double carrier_mhz)
{
    return 28.0 + 22.0 * std::log10(d3_m) + 20.0 * std::log10(carrier_mhz * 1e-3);
}

double ata_pl_nlos_db(double d3_m, double ue_height_m, double carrier_mhz)
{
    const double fc_ghz = carrier_mhz * 1e-3;
    return -17.5 + (46.0 - 7.0 * std::log10(ue_height_m)) * std::log10(d3_m)
           + 20.0 * std::log10(40.0 * std::numbers::pi * fc_ghz / 3.0);
}

double pl_ata(const LinkGeometry& geom,
              const ChannelParams& params,
              double ue_height_m,
              Xoshiro256& rng)
{
    if (ue_height_m < kAerialMinHeightM || ue_height_m > kAerialMaxHeightM)
    {
        throw ParameterError("ATA model needs an aerial UE height in [22.5, 100] m");
    }
    if (!(geom.d3_m > 0))
    {
        throw ParameterError("ATA path loss needs a positive distance");
    }
    const double p_los = ata_los_probability(geom.d2_m, ue_height_m);
    const double los = ata_pl_los_db(geom.d3_m, params.carrier_mhz);
    const double nlos = ata_pl_nlos_db(geom.d3_m, ue_height_m, params.carrier_mhz);
    if (params.los_mode == LosMode::Bernoulli)
    {
        return rng.uniform_open() < p_los ? los : nlos;
    }
    return p_los * los + (1.0 - p_los) * nlos;
}

double fspl_db(double d3_m, double carrier_mhz)
{
    return 20.0
           * std::log10(4.0 * std::numbers::pi * d3_m * carrier_mhz * 1e6
                        / kSpeedOfLight);
}

double atg_los_probability(double elevation_deg, const ChannelParams& params)
{
    const double a = params.atg_los_a;
    return 1.0 / (1.0 + a * std::exp(-params.atg_los_b * (elevation_deg - a)));
}

double atg_branch_db(double d3_m, bool los, const ChannelParams& params)
{
    const double n = los ? params.atg_pl_exponent_los : params.atg_pl_exponent_nlos;
    const double eta = los ? params.atg_excess_los_db : params.atg_excess_nlos_db;
    // Free-space loss at 1 m plus 10 n log10(d); n = 2 is plain FSPL.
    return fspl_db(1.0, params.carrier_mhz) + 10.0 * n * std::log10(d3_m) + eta;
}

double pl_atg(const LinkGeometry& geom, const ChannelParams& params)
{
    if (!(geom.elevation_deg > 0))
    {
        throw ParameterError("ATG path loss needs a UE below the UABS");
    }
    const double p_los = atg_los_probability(geom.elevation_deg, params);
    return p_los * atg_branch_db(geom.d3_m, true, params)
           + (1.0 - p_los) * atg_branch_db(geom.d3_m, false, params);
}

double nakagami_power_gain(double m, Xoshiro256& rng)
{
    if (!(m >= 0.5))
    {
        throw ParameterError("Nakagami shape m must be >= 0.5");
    }
    if (m == 1.0)
    {
        return -std::log(rng.uniform_open());
    }
    std::gamma_distribution<double> gamma(m, 1.0 / m);
    return gamma(rng);
}

double antenna_gain(double azimuth_deg,
                    double elevation_deg,
                    const AntennaParams& params)
{
    const double phi = wrap_azimuth(azimuth_deg);
    const double v = (elevation_deg - params.downtilt_deg) / params.theta_3db_deg;
    const double h = phi / params.phi_3db_deg;
    const double a_v = -std::min(12.0 * v * v, params.sla_v_db);
    const double a_h = -std::min(12.0 * h * h, params.a_max_db);
    return params.g_max_dbi - std::min(-(a_v + a_h), params.a_max_db);
}

PathLossCdf path_loss_cdf(const NetworkLayout& layout,
                          const ChannelParams& params,
                          Xoshiro256& rng)
{
    params.validate();
    PathLossCdf out;
    const std::uint64_t base = rng();
    for (Tier bs_tier : {Tier::Mbs, Tier::Pbs, Tier::Uabs})
    {
        const auto& bss = layout.nodes(bs_tier);
        for (Tier ue_tier : {Tier::Gue, Tier::Aue})
        {
            const auto& ues = layout.nodes(ue_tier);
            const LinkClass cls = classify_link(bs_tier, ue_tier);
            auto& sink = out.sorted_db[static_cast<std::size_t>(cls)];
            sink.reserve(sink.size() + bss.size() * ues.size());
            for (std::size_t b = 0; b < bss.size(); ++b)
            {
                for (std::size_t u = 0; u < ues.size(); ++u)
                {
                    const auto geom = LinkGeometry::between(bss[b], ues[u]);
                    double pl = 0;
                    switch (cls)
                    {
                        case LinkClass::Gtg:
                            pl = pl_gtg(geom, params, bss[b].z, ues[u].z);
                            break;
                        case LinkClass::Atg: pl = pl_atg(geom, params); break;
                        case LinkClass::Ata:
                        {
                            auto link_rng = substream(
                                base, StreamTag::PathLossCdf,
                                static_cast<std::uint64_t>(bs_tier), b, u);
                            pl = pl_ata(geom, params, ues[u].z, link_rng);
                            break;
                        }
                    }
                    sink.push_back(pl);
                }
            }
        }
    }
    for (auto& v : out.sorted_db)
    {
        std::sort(v.begin(), v.end());
    }
    return out;
}

void write_path_loss_cdf_csv(std::ostream& os,
                             const PathLossCdf& cdf,
                             std::size_t max_points)
{
    const auto precision = os.precision(10);
    os << "link_class,pl_db,cdf\n";
    max_points = std::max<std::size_t>(max_points, 2);
    for (LinkClass c : {LinkClass::Gtg, LinkClass::Ata, LinkClass::Atg})
    {
        const auto& v = cdf.of(c);
        const std::size_t n = v.size();
        if (n == 0)
        {
            continue;
        }
        const std::size_t rows = std::min(n, max_points);
        for (std::size_t i = 0; i < rows; ++i)
        {
            const std::size_t k
                = rows == 1 ? n - 1
                            : static_cast<std::size_t>(std::llround(
                                static_cast<double>(i) * static_cast<double>(n - 1)
                                / static_cast<double>(rows - 1)));
            os << to_string(c) << ',' << v[k] << ','
               << static_cast<double>(k + 1) / static_cast<double>(n) << '\n';
        }
    }
    os.precision(precision);
}

}  // namespace aghetnet
