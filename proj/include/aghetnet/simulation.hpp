// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/simulation.hpp
//! Monte-Carlo trial machinery and the data-parallel kernels behind it.
//!
//! A trial is one layout draw plus one fading draw per BS-receiver link.
//! Everything that does not depend on the ICIC state (the three serving
//! powers and the aggregate interference of every UE and coverage probe) is
//! computed once per trial into a LinkTable; ICIC states are then evaluated
//! against that table. Holding the table fixed across states is what gives
//! the optimizer common random numbers.
//!
//! Each kernel has a serial reference and an OpenMP variant. Randomness is
//! keyed by (seed, trial, receiver, bs), and reductions run in index order,
//! so both variants return identical results for any thread count.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aghetnet/kpi.hpp"
#include "aghetnet/scenario.hpp"

namespace aghetnet
{
enum class Execution
{
    Serial,
    Parallel
};

//! Number of OpenMP workers used by Execution::Parallel (1 without OpenMP).
void set_worker_threads(int n);
int worker_threads();

struct LinkTable
{
    std::vector<ServingPowers> powers;
    std::vector<NearestCells> nearest;

    std::size_t size() const { return powers.size(); }
};

//! Link table of the receivers; receiver i draws from substream key
//! (seed, tag, trial, i, bs).
LinkTable link_table_serial(const NetworkLayout& layout,
                            std::span<const Node> receivers,
                            const ChannelParams& channel,
                            std::uint64_t seed,
                            StreamTag tag,
                            std::uint64_t trial);

LinkTable link_table_omp(const NetworkLayout& layout,
                         std::span<const Node> receivers,
                         const ChannelParams& channel,
                         std::uint64_t seed,
                         StreamTag tag,
                         std::uint64_t trial);

struct TrialData
{
    std::uint64_t seed{0};
    std::uint64_t trial{0};
    NetworkLayout layout;
    std::vector<Node> ues;     //!< GUEs then AUEs
    std::vector<Node> probes;  //!< coverage probes at GUE height
    LinkTable ue_links;
    LinkTable probe_links;
};

//! Draws the layout from substream (seed, Layout, trial) and fills both
//! link tables.
TrialData build_trial(const Scenario& scenario,
                      std::uint64_t seed,
                      std::uint64_t trial,
                      Execution exec = Execution::Serial);

struct TrialKpi
{
    double fifth_percentile_se{0};
    double coverage_probability{0};

    friend bool operator==(const TrialKpi&, const TrialKpi&) = default;
};

struct TrialOutcome
{
    Association ues;
    std::vector<UeAssignment> probes;
    std::vector<double> per_ue_se;
    TrialKpi kpi;
};

//! Straight composition of associate / ue_spectral_efficiency /
//! fifth_percentile / coverage_probability. Kept as the reference for
//! StateEvaluator.
TrialOutcome evaluate_state_reference(const TrialData& trial,
                                      const IcicState& state,
                                      const Scenario& scenario);

//! Fast per-state evaluation against one trial. Caches dB and log2 terms;
//! CSF terms are cached per distinct (alpha_mbs, alpha_pbs) pair. Results
//! are bitwise equal to evaluate_state_reference.
class StateEvaluator
{
  public:
    StateEvaluator(const TrialData& trial, const Scenario& scenario);

    TrialKpi evaluate(const IcicState& state);

  private:
    struct Population
    {
        std::size_t size{0};
        std::vector<double> usf_db;   // [i*3 + tier]
        std::vector<double> usf_lg;   // log2(1 + usf sir)
        std::vector<std::uint32_t> slot;  // [i*3 + tier] global cell slot
    };
    struct AlphaTerms
    {
        double alpha_mbs;
        double alpha_pbs;
        std::vector<double> csf_db;  // [i*3 + tier]
        std::vector<double> csf_lg;
    };
    struct Scratch
    {
        std::vector<std::uint32_t> load_slot;
        std::vector<std::uint8_t> tier;
        std::vector<std::uint8_t> subframe;
        std::vector<double> se;
    };

    Population make_population(const LinkTable& links) const;
    AlphaTerms make_alpha_terms(const LinkTable& links, double am, double ap) const;
    const AlphaTerms& alpha_terms(bool probes, double am, double ap);
    void assign(const Population& pop,
                const AlphaTerms& csf,
                const IcicState& state,
                Scratch& out) const;

    const TrialData& trial_;
    SchedulingRule rule_;
    UabsDutyNormalization norm_;
    double threshold_se_;
    SirOptions sir_;
    std::size_t n_cells_{0};
    Population ues_;
    Population probes_;
    std::vector<AlphaTerms> ue_alpha_;
    std::vector<AlphaTerms> probe_alpha_;
    std::vector<int> loads_;
    Scratch ue_scratch_;
    Scratch probe_scratch_;
};

//! One trial evaluated at one state, with per-UE SE retained.
TrialRecord run_trial(const Scenario& scenario,
                      const IcicState& state,
                      std::uint64_t seed,
                      std::uint64_t trial = 0,
                      Execution exec = Execution::Serial);

//! Trials 0..trials-1 of the master seed, KPIs averaged over trials.
KpiReport run_campaign(const Scenario& scenario,
                       const IcicState& state,
                       std::size_t trials,
                       std::uint64_t seed,
                       Execution exec = Execution::Parallel);

//! KPIs of every state on every trial; values[state * trials + trial].
struct SweepResult
{
    std::size_t states{0};
    std::size_t trials{0};
    std::vector<TrialKpi> values;

    const TrialKpi& at(std::size_t state, std::size_t trial) const
    {
        return values[state * trials + trial];
    }
    //! Trial mean, summed in trial order.
    TrialKpi mean(std::size_t state) const;
};

SweepResult sweep_states_serial(const Scenario& scenario,
                                std::span<const IcicState> states,
                                std::size_t trials,
                                std::uint64_t seed);

SweepResult sweep_states_omp(const Scenario& scenario,
                             std::span<const IcicState> states,
                             std::size_t trials,
                             std::uint64_t seed);

SweepResult sweep_states(const Scenario& scenario,
                         std::span<const IcicState> states,
                         std::size_t trials,
                         std::uint64_t seed,
                         Execution exec = Execution::Parallel);

}  // namespace aghetnet
