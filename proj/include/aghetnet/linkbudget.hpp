// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/linkbudget.hpp
//! Received reference-signal power per link, nearest-cell lookup, aggregate
//! interference, and the six USF/CSF signal-to-interference ratios.
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "aghetnet/channel.hpp"
#include "aghetnet/deployment.hpp"

namespace aghetnet
{
//! A node of the layout: tier, index within the tier, position.
struct Node
{
    Tier tier{Tier::Gue};
    std::size_t index{0};
    Position pos;
};

struct LinkBudget
{
    double rx_power_mw{0};
    double pl_db{0};
    double antenna_db{0};
    double fading{1};  //!< linear power gain H
    LinkGeometry geometry;
    std::size_t bs_index{0};
    Tier bs_tier{Tier::Mbs};
    LinkClass link_class{LinkClass::Gtg};
    bool los{false};  //!< LOS state used to pick the fading shape
};

//! Source of per-link random substreams keyed by (trial, receiver, bs).
struct LinkStreams
{
    std::uint64_t seed{0};
    StreamTag tag{StreamTag::UeLinks};
    std::uint64_t trial{0};
    std::uint64_t receiver{0};

    Xoshiro256 for_bs(Tier bs_tier, std::size_t bs_index) const
    {
        return substream(seed, tag, trial, receiver,
                         (static_cast<std::uint64_t>(bs_tier) << 40) | bs_index);
    }
};

//! Received power P * A_E * H / 10^(PL/10) of one link.
//!
//! The link class follows from the tier pair. The rng supplies, in order, one
//! uniform for the LOS state (used by ATA/ATG) and then the fading draw. LOS
//! links fade with m_los, NLOS and all GTG links with m_nlos.
LinkBudget received_power(const Node& bs,
                          const Node& ue,
                          double tx_power_dbm,
                          const ChannelParams& channel,
                          Xoshiro256& rng);

//! Index of the nearest MBS (MOI), PBS (POI) and UABS (UOI).
struct NearestCells
{
    std::size_t moi{0};
    std::size_t poi{0};
    std::size_t uoi{0};

    std::size_t of(Tier bs_tier) const;
};

//! Nearest cell of every BS tier by 3D distance, lowest index on ties.
//! Throws ConfigError when a BS tier is empty.
NearestCells nearest_cells(const Position& ue, const NetworkLayout& layout);

//! Full-power interference from every BS except the three nearest ones,
//! split by the transmitting tier.
struct TierInterference
{
    double mbs{0};
    double pbs{0};
    double uabs{0};

    double total() const { return mbs + pbs + uabs; }
};

TierInterference interference_by_tier(const Node& ue,
                                      const NetworkLayout& layout,
                                      const NearestCells& nearest,
                                      const ChannelParams& channel,
                                      const LinkStreams& streams);

//! Sum of received powers from every BS except the three nearest ones,
//! all at full power with independent fading.
double aggregate_interference(const Node& ue,
                              const NetworkLayout& layout,
                              const NearestCells& nearest,
                              const ChannelParams& channel,
                              const LinkStreams& streams);

//! State-independent powers seen by one UE in one trial.
struct ServingPowers
{
    double r_mbs{0};
    double r_pbs{0};
    double r_uabs{0};
    TierInterference interference;

    double i_agg() const { return interference.total(); }
};

//! Received powers from the three nearest cells and the aggregate
//! interference, all drawn from the same per-link substreams.
ServingPowers serving_powers(const Node& ue,
                             const NetworkLayout& layout,
                             const NearestCells& nearest,
                             const ChannelParams& channel,
                             const LinkStreams& streams);

//! ICIC and CRE parameters applied uniformly to every cell of a tier.
struct IcicState
{
    double alpha_mbs{1};
    double alpha_pbs{1};
    double beta_mbs{0.5};
    double beta_pbs{0.5};
    double rho_mbs_db{30};
    double rho_pbs_db{0};
    double rho_uabs_db{0};
    double tau_pbs_db{0};
    double tau_uabs_db{0};

    void validate() const;
    double rho_db(Tier bs_tier) const;

    friend bool operator==(const IcicState&, const IcicState&) = default;
};

struct SirSextet
{
    double mbs_usf{0};
    double mbs_csf{0};
    double pbs_usf{0};
    double pbs_csf{0};
    double uabs_usf{0};
    double uabs_csf{0};

    double usf(Tier bs_tier) const;
    double csf(Tier bs_tier) const;
    double of(Tier bs_tier, Subframe sf) const
    {
        return sf == Subframe::Usf ? usf(bs_tier) : csf(bs_tier);
    }
};

inline constexpr double kDefaultSirFloorMw = 1e-30;

//! Which cells transmit at reduced power during a CSF.
enum class CsfAlignment
{
    NearestCells,  //!< only the UE's MOI and POI; the rest stay at full power
    Network,       //!< every MBS and PBS, as with synchronized ABS patterns
};

const char* to_string(CsfAlignment a);
CsfAlignment csf_alignment_from_string(const std::string& s);

struct SirOptions
{
    double floor_mw{kDefaultSirFloorMw};
    CsfAlignment alignment{CsfAlignment::NearestCells};

    friend bool operator==(const SirOptions&, const SirOptions&) = default;
};

//! The six ratios. Denominators are floored at floor_mw; a zero numerator
//! gives a zero ratio.
SirSextet sir_sextet(const ServingPowers& powers,
                     const IcicState& state,
                     const SirOptions& options = {});

//! CSF interference from beyond the nearest cells.
inline double csf_interference(const TierInterference& i,
                               const IcicState& s,
                               CsfAlignment alignment)
{
    if (alignment == CsfAlignment::NearestCells)
    {
        return i.total();
    }
    return s.alpha_mbs * i.mbs + s.alpha_pbs * i.pbs + i.uabs;
}

}  // namespace aghetnet
