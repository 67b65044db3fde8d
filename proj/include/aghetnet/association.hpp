// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/association.hpp
//! Cell selection with range-expansion bias and the USF/CSF scheduling split.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "aghetnet/linkbudget.hpp"

namespace aghetnet
{
//! How a served UE is split between full-power (USF) and coordinated (CSF)
//! subframes.
enum class SchedulingRule
{
    //! Every tier: USF iff the USF SIR reaches the tier threshold.
    ServingSir,
    //! MBS keeps UEs whose CSF SIR reaches the threshold in its reduced-power
    //! CSF and the rest in the USF. PBS and UABS as in ServingSir.
    MacroCenter,
    //! As MacroCenter, with the PBS treated like the MBS.
    ReducedPowerCenter
};

const char* to_string(SchedulingRule r);
SchedulingRule scheduling_rule_from_string(const std::string& s);

struct CellSelection
{
    Tier serving_tier{Tier::Mbs};
    double biased_metric_db{0};
};

//! argmax of {G_mbs, G_pbs + tau_pbs, G_uabs + tau_uabs} over the USF SIRs
//! in dB. Exact ties resolve MBS, then PBS, then UABS.
CellSelection select_cell(const SirSextet& sir, const IcicState& state);

Subframe schedule_subframe(Tier serving_tier,
                           const SirSextet& sir,
                           const IcicState& state,
                           SchedulingRule rule = SchedulingRule::ServingSir);

struct UeAssignment
{
    std::size_t ue_index{0};
    Tier serving_tier{Tier::Mbs};
    std::size_t serving_cell{0};
    Subframe subframe{Subframe::Usf};
    SirSextet sir;
    double biased_metric_db{0};

    double serving_sir() const { return sir.of(serving_tier, subframe); }
};

//! Number of UEs per cell and subframe, for every BS tier.
class CellLoads
{
  public:
    CellLoads() = default;
    CellLoads(std::size_t n_mbs, std::size_t n_pbs, std::size_t n_uabs);

    void add(Tier bs_tier, std::size_t cell, Subframe sf);
    int count(Tier bs_tier, std::size_t cell, Subframe sf) const;
    //! Sum over all cells of a tier in one subframe.
    int tier_total(Tier bs_tier, Subframe sf) const;
    int total() const;
    std::size_t cells(Tier bs_tier) const;

  private:
    const std::vector<int>& slot(Tier bs_tier, Subframe sf) const;
    std::vector<int>& slot(Tier bs_tier, Subframe sf);

    // [tier][subframe] -> per-cell counts
    std::array<std::array<std::vector<int>, 2>, 3> counts_;
};

UeAssignment associate(std::size_t ue_index,
                       const ServingPowers& powers,
                       const NearestCells& nearest,
                       const IcicState& state,
                       SchedulingRule rule,
                       const SirOptions& sir_options = {});

struct Association
{
    std::vector<UeAssignment> assignments;
    CellLoads loads;
};

//! Associates every UE of a precomputed link table and tallies loads.
Association associate_all(std::span<const ServingPowers> powers,
                          std::span<const NearestCells> nearest,
                          const NetworkLayout& layout,
                          const IcicState& state,
                          SchedulingRule rule,
                          const SirOptions& sir_options = {});

//! Associates every GUE and AUE of the layout (GUEs first), drawing link
//! randomness from substreams keyed by (seed, trial, ue, bs).
Association associate_all(const NetworkLayout& layout,
                          const IcicState& state,
                          const ChannelParams& channel,
                          std::uint64_t seed,
                          std::uint64_t trial,
                          SchedulingRule rule,
                          const SirOptions& sir_options = {});

}  // namespace aghetnet
