// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/scenario.hpp
//! Everything a Monte-Carlo trial needs besides the ICIC state and the seed.
//---------------------------------------------------------------------------//
#pragma once

#include <vector>

#include "aghetnet/association.hpp"
#include "aghetnet/channel.hpp"
#include "aghetnet/deployment.hpp"

namespace aghetnet
{
//! Weighting of the UABS USF/CSF duty shares, which are written as
//! (beta_mbs + beta_pbs) and 2 - (beta_mbs + beta_pbs) and so sum to two.
enum class UabsDutyNormalization
{
    Half,      //!< scale both shares by 1/2 so they sum to one frame
    AsWritten  //!< use them unscaled
};

struct Scenario
{
    SimArea area;
    std::vector<TierSpec> tiers;
    ChannelParams channel;
    SchedulingRule scheduling{SchedulingRule::MacroCenter};
    UabsDutyNormalization uabs_duty{UabsDutyNormalization::Half};
    double threshold_se{1e-2};         //!< coverage SE threshold, bps/Hz
    double probe_resolution_m{200};    //!< coverage probe grid pitch
    SirOptions sir{kDefaultSirFloorMw, CsfAlignment::Network};

    //! 100 km^2; MBS/PBS/GUE/AUE at 4/12/100/1.8 per km^2; 60 UABS on the
    //! hex grid; 46/30/26 dBm; heights 36/15/uabs/1.5/22.5 m; 763 MHz.
    static Scenario reference(double uabs_height_m = 36.0);

    //! Reduced-area variant of reference(): same intensities and powers.
    static Scenario desk(double area_km2, int uabs_count, double uabs_height_m = 36.0);

    TierSpec& tier(Tier t);
    const TierSpec& tier(Tier t) const;
    void validate() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

}  // namespace aghetnet
