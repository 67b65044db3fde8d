// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/channel.hpp
//! Path loss for the three link classes, Nakagami-m fading and the 3D
//! antenna element pattern.
//!
//! Link classes:
//!  - GTG: MBS/PBS to ground UE, urban Okumura-Hata (large-city correction).
//!  - ATA: any base station to aerial UE, 3GPP UMa-AV LOS probability and
//!    LOS/NLOS path loss for aerial UE heights.
//!  - ATG: UABS to ground UE, elevation-angle sigmoid LOS probability with
//!    free-space-type branches plus excess loss.
//!
//! ATA and ATG losses are the LOS-probability-weighted average of the two
//! branches in dB unless LosMode::Bernoulli is selected.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "aghetnet/rng.hpp"
#include "aghetnet/types.hpp"

namespace aghetnet
{
struct NetworkLayout;

//! 3GPP-style element pattern parameters.
struct AntennaParams
{
    double g_max_dbi{8};
    double theta_3db_deg{65};
    double phi_3db_deg{65};
    double sla_v_db{30};
    double a_max_db{30};
    double downtilt_deg{6};

    void validate() const;

    friend bool operator==(const AntennaParams&, const AntennaParams&) = default;
};

enum class LosMode
{
    Expected,  //!< probability-weighted dB average of the LOS/NLOS branches
    Bernoulli  //!< per-link LOS draw selects one branch
};

struct ChannelParams
{
    double carrier_mhz{763};
    double m_los{3};
    double m_nlos{1};
    double atg_los_a{9.61};
    double atg_los_b{0.16};
    double atg_pl_exponent_los{2.0};
    double atg_pl_exponent_nlos{2.5};
    double atg_excess_los_db{1.0};
    double atg_excess_nlos_db{20.0};
    AntennaParams antenna;  //!< MBS and PBS element
    double uabs_downtilt_deg{0};
    LosMode los_mode{LosMode::Expected};
    bool fading{true};  //!< false pins H = 1

    void validate() const;
    //! Non-fatal remarks, e.g. carrier outside the Hata validity range.
    std::vector<std::string> warnings() const;
    AntennaParams antenna_for(Tier bs_tier) const;

    friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

//! Geometry of one BS -> UE link.
struct LinkGeometry
{
    double d2_m{0};           //!< horizontal distance
    double d3_m{0};           //!< 3D distance
    double elevation_deg{0};  //!< depression angle at the BS; > 0 if UE is below
    double azimuth_deg{0};    //!< offset from the BS boresight

    //! Horizontal distance is clamped to at least kMinLinkDistanceM. Beams
    //! are steered in azimuth, so azimuth_deg is 0.
    static LinkGeometry between(const Position& bs, const Position& ue);
};

inline constexpr double kMinLinkDistanceM = 1.0;

enum class LinkClass
{
    Gtg,
    Ata,
    Atg
};

std::string_view to_string(LinkClass c);

//! Throws ClassificationError for pairs that are not BS -> UE.
LinkClass classify_link(Tier bs_tier, Tier ue_tier);

//---------------------------------------------------------------------------//
// GTG
//---------------------------------------------------------------------------//
//! Urban Okumura-Hata loss in dB. Throws ParameterError if d2_m <= 0.
double pl_gtg(const LinkGeometry& geom,
              const ChannelParams& params,
              double bs_height_m,
              double ue_height_m);

//---------------------------------------------------------------------------//
// ATA
//---------------------------------------------------------------------------//
double ata_los_probability(double d2_m, double ue_height_m);
double ata_pl_los_db(double d3_m, double carrier_mhz);
double ata_pl_nlos_db(double d3_m, double ue_height_m, double carrier_mhz);
//! The rng is only consumed in LosMode::Bernoulli.
double pl_ata(const LinkGeometry& geom,
              const ChannelParams& params,
              double ue_height_m,
              Xoshiro256& rng);

//---------------------------------------------------------------------------//
// ATG
//---------------------------------------------------------------------------//
double fspl_db(double d3_m, double carrier_mhz);
double atg_los_probability(double elevation_deg, const ChannelParams& params);
double atg_branch_db(double d3_m, bool los, const ChannelParams& params);
//! Throws ParameterError when elevation_deg <= 0.
double pl_atg(const LinkGeometry& geom, const ChannelParams& params);

//---------------------------------------------------------------------------//
// Fading and antenna
//---------------------------------------------------------------------------//
//! Power gain H ~ Gamma(m, 1/m), E[H] = 1. Throws ParameterError if m < 0.5.
double nakagami_power_gain(double m, Xoshiro256& rng);

//! Element gain in dBi; elevation is the depression angle in degrees.
double antenna_gain(double azimuth_deg,
                    double elevation_deg,
                    const AntennaParams& params);

//---------------------------------------------------------------------------//
// Empirical path-loss distribution
//---------------------------------------------------------------------------//
struct PathLossCdf
{
    //! Sorted path losses in dB, one vector per LinkClass.
    std::array<std::vector<double>, 3> sorted_db;

    const std::vector<double>& of(LinkClass c) const
    {
        return sorted_db[static_cast<std::size_t>(c)];
    }
};

//! Path loss of every BS-UE pair of the layout, grouped by link class.
PathLossCdf path_loss_cdf(const NetworkLayout& layout,
                          const ChannelParams& params,
                          Xoshiro256& rng);

//! CSV link_class,pl_db,cdf with at most max_points rows per class; the
//! first and last order statistics are always included.
void write_path_loss_cdf_csv(std::ostream& os,
                             const PathLossCdf& cdf,
                             std::size_t max_points = 512);

}  // namespace aghetnet
