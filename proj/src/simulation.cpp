// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/simulation.hpp"

#include <algorithm>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#    include <omp.h>
#endif

namespace aghetnet
{
namespace
{
constexpr std::size_t kTiers = 3;

//! Rethrows the first exception raised inside a parallel region.
class ExceptionSink
{
  public:
    template<class F>
    void run(F&& f) noexcept
    {
        try
        {
            f();
        }
        catch (...)
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (!first_)
            {
                first_ = std::current_exception();
            }
        }
    }
    void rethrow() const
    {
        if (first_)
        {
            std::rethrow_exception(first_);
        }
    }

  private:
    std::mutex mutex_;
    std::exception_ptr first_;
};

std::vector<Node> user_nodes(const NetworkLayout& layout)
{
    std::vector<Node> out;
    out.reserve(layout.gue.size() + layout.aue.size());
    for (Tier t : {Tier::Gue, Tier::Aue})
    {
        const auto& v = layout.nodes(t);
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            out.push_back({t, i, v[i]});
        }
    }
    return out;
}

void link_for_receiver(const NetworkLayout& layout,
                       const Node& rx,
                       const ChannelParams& channel,
                       const LinkStreams& streams,
                       ServingPowers& powers,
                       NearestCells& nearest)
{
    nearest = nearest_cells(rx.pos, layout);
    powers = serving_powers(rx, layout, nearest, channel, streams);
}
}  // namespace

void set_worker_threads(int n)
{
#ifdef _OPENMP
    omp_set_num_threads(std::max(1, n));
#else
    (void)n;
#endif
}

int worker_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

LinkTable link_table_serial(const NetworkLayout& layout,
                            std::span<const Node> receivers,
                            const ChannelParams& channel,
                            std::uint64_t seed,
                            StreamTag tag,
                            std::uint64_t trial)
{
    LinkTable table;
    table.powers.resize(receivers.size());
    table.nearest.resize(receivers.size());
    for (std::size_t i = 0; i < receivers.size(); ++i)
    {
        link_for_receiver(layout, receivers[i], channel, {seed, tag, trial, i},
                          table.powers[i], table.nearest[i]);
    }
    return table;
}

LinkTable link_table_omp(const NetworkLayout& layout,
                         std::span<const Node> receivers,
                         const ChannelParams& channel,
                         std::uint64_t seed,
                         StreamTag tag,
                         std::uint64_t trial)
{
    LinkTable table;
    table.powers.resize(receivers.size());
    table.nearest.resize(receivers.size());
    ExceptionSink sink;
    const auto n = static_cast<std::ptrdiff_t>(receivers.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
    {
        const auto k = static_cast<std::size_t>(i);
        sink.run([&] {
            link_for_receiver(layout, receivers[k], channel, {seed, tag, trial, k},
                              table.powers[k], table.nearest[k]);
        });
    }
    sink.rethrow();
    return table;
}

TrialData build_trial(const Scenario& scenario,
                      std::uint64_t seed,
                      std::uint64_t trial,
                      Execution exec)
{
    TrialData data;
    data.seed = seed;
    data.trial = trial;
    auto layout_rng = substream(seed, StreamTag::Layout, trial);
    data.layout = build_layout(scenario.tiers, scenario.area, layout_rng);
    data.ues = user_nodes(data.layout);
    const double probe_h = scenario.tier(Tier::Gue).height_m;
    const auto grid = probe_grid(scenario.area, scenario.probe_resolution_m, probe_h);
    data.probes.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        data.probes.push_back({Tier::Gue, i, grid[i]});
    }
    auto kernel = exec == Execution::Parallel ? link_table_omp : link_table_serial;
    data.ue_links = kernel(data.layout, data.ues, scenario.channel, seed,
                           StreamTag::UeLinks, trial);
    data.probe_links = kernel(data.layout, data.probes, scenario.channel, seed,
                              StreamTag::ProbeLinks, trial);
    return data;
}

TrialOutcome evaluate_state_reference(const TrialData& trial,
                                      const IcicState& state,
                                      const Scenario& scenario)
{
    TrialOutcome out;
    out.ues = associate_all(trial.ue_links.powers, trial.ue_links.nearest,
                            trial.layout, state, scenario.scheduling,
                            scenario.sir);
    out.per_ue_se.reserve(out.ues.assignments.size());
    for (const auto& a : out.ues.assignments)
    {
        out.per_ue_se.push_back(
            ue_spectral_efficiency(a, out.ues.loads, state, scenario.uabs_duty));
    }
    out.kpi.fifth_percentile_se
        = out.per_ue_se.empty() ? 0.0 : fifth_percentile(out.per_ue_se);

    out.probes.reserve(trial.probe_links.size());
    for (std::size_t i = 0; i < trial.probe_links.size(); ++i)
    {
        out.probes.push_back(associate(i, trial.probe_links.powers[i],
                                       trial.probe_links.nearest[i], state,
                                       scenario.scheduling, scenario.sir));
    }
    out.kpi.coverage_probability = coverage_probability(
        out.probes, out.ues.loads, state, scenario.uabs_duty, scenario.threshold_se);
    return out;
}

//---------------------------------------------------------------------------//
// StateEvaluator
//---------------------------------------------------------------------------//
StateEvaluator::StateEvaluator(const TrialData& trial, const Scenario& scenario)
    : trial_(trial)
    , rule_(scenario.scheduling)
    , norm_(scenario.uabs_duty)
    , threshold_se_(scenario.threshold_se)
    , sir_(scenario.sir)
    , n_cells_(trial.layout.base_station_count())
{
    ues_ = make_population(trial.ue_links);
    probes_ = make_population(trial.probe_links);
}

StateEvaluator::Population StateEvaluator::make_population(const LinkTable& links) const
{
    const std::array<std::uint32_t, kTiers> base{
        0, static_cast<std::uint32_t>(trial_.layout.mbs.size()),
        static_cast<std::uint32_t>(trial_.layout.mbs.size() + trial_.layout.pbs.size())};
    Population pop;
    pop.size = links.size();
    pop.usf_db.resize(pop.size * kTiers);
    pop.usf_lg.resize(pop.size * kTiers);
    pop.slot.resize(pop.size * kTiers);
    // USF ratios do not depend on the state.
    const IcicState any;
    for (std::size_t i = 0; i < pop.size; ++i)
    {
        const SirSextet g = sir_sextet(links.powers[i], any, sir_);
        const std::array<double, kTiers> usf{g.mbs_usf, g.pbs_usf, g.uabs_usf};
        for (std::size_t t = 0; t < kTiers; ++t)
        {
            pop.usf_db[i * kTiers + t] = linear_to_db(usf[t]);
            pop.usf_lg[i * kTiers + t] = std::log2(1.0 + usf[t]);
            pop.slot[i * kTiers + t] = base[t]
                + static_cast<std::uint32_t>(links.nearest[i].of(static_cast<Tier>(t)));
        }
    }
    return pop;
}

StateEvaluator::AlphaTerms
StateEvaluator::make_alpha_terms(const LinkTable& links, double am, double ap) const
{
    AlphaTerms terms{am, ap, {}, {}};
    IcicState s;
    s.alpha_mbs = am;
    s.alpha_pbs = ap;
    terms.csf_db.resize(links.size() * kTiers);
    terms.csf_lg.resize(links.size() * kTiers);
    for (std::size_t i = 0; i < links.size(); ++i)
    {
        const SirSextet g = sir_sextet(links.powers[i], s, sir_);
        const std::array<double, kTiers> csf{g.mbs_csf, g.pbs_csf, g.uabs_csf};
        for (std::size_t t = 0; t < kTiers; ++t)
        {
            terms.csf_db[i * kTiers + t] = linear_to_db(csf[t]);
            terms.csf_lg[i * kTiers + t] = std::log2(1.0 + csf[t]);
        }
    }
    return terms;
}

const StateEvaluator::AlphaTerms&
StateEvaluator::alpha_terms(bool probes, double am, double ap)
{
    auto& cache = probes ? probe_alpha_ : ue_alpha_;
    for (const auto& t : cache)
    {
        if (t.alpha_mbs == am && t.alpha_pbs == ap)
        {
            return t;
        }
    }
    cache.push_back(make_alpha_terms(probes ? trial_.probe_links : trial_.ue_links, am, ap));
    return cache.back();
}

void StateEvaluator::assign(const Population& pop,
                            const AlphaTerms& csf,
                            const IcicState& s,
                            Scratch& out) const
{
    out.load_slot.resize(pop.size);
    out.tier.resize(pop.size);
    out.subframe.resize(pop.size);
    const std::array<double, kTiers> rho{s.rho_mbs_db, s.rho_pbs_db, s.rho_uabs_db};
    const bool center_mbs = rule_ != SchedulingRule::ServingSir;
    const bool center_pbs = rule_ == SchedulingRule::ReducedPowerCenter;
    for (std::size_t i = 0; i < pop.size; ++i)
    {
        const double* db = &pop.usf_db[i * kTiers];
        std::size_t t = 0;
        double best = db[0];
        const double p = db[1] + s.tau_pbs_db;
        const double u = db[2] + s.tau_uabs_db;
        if (p > best)
        {
            t = 1;
            best = p;
        }
        if (u > best)
        {
            t = 2;
        }
        std::uint8_t sf = 0;
        if ((t == 0 && center_mbs) || (t == 1 && center_pbs))
        {
            sf = csf.csf_db[i * kTiers + t] >= rho[t] ? 1 : 0;
        }
        else
        {
            sf = db[t] >= rho[t] ? 0 : 1;
        }
        out.tier[i] = static_cast<std::uint8_t>(t);
        out.subframe[i] = sf;
        out.load_slot[i] = pop.slot[i * kTiers + t] * 2 + sf;
    }
}

TrialKpi StateEvaluator::evaluate(const IcicState& s)
{
    TrialKpi kpi;
    const AlphaTerms& ue_csf = alpha_terms(false, s.alpha_mbs, s.alpha_pbs);
    const AlphaTerms& probe_csf = alpha_terms(true, s.alpha_mbs, s.alpha_pbs);

    double weight[kTiers][2];
    for (std::size_t t = 0; t < kTiers; ++t)
    {
        weight[t][0] = duty_weight(static_cast<Tier>(t), Subframe::Usf, s, norm_);
        weight[t][1] = duty_weight(static_cast<Tier>(t), Subframe::Csf, s, norm_);
    }

    assign(ues_, ue_csf, s, ue_scratch_);
    loads_.assign(n_cells_ * 2, 0);
    for (std::uint32_t slot : ue_scratch_.load_slot)
    {
        ++loads_[slot];
    }

    auto lg = [](const Population& pop, const AlphaTerms& csf, std::size_t i,
                 std::size_t t, std::uint8_t sf) {
        return sf == 0 ? pop.usf_lg[i * kTiers + t] : csf.csf_lg[i * kTiers + t];
    };

    auto& se = ue_scratch_.se;
    se.resize(ues_.size);
    for (std::size_t i = 0; i < ues_.size; ++i)
    {
        const std::size_t t = ue_scratch_.tier[i];
        const std::uint8_t sf = ue_scratch_.subframe[i];
        se[i] = weight[t][sf] * lg(ues_, ue_csf, i, t, sf) / loads_[ue_scratch_.load_slot[i]];
    }
    kpi.fifth_percentile_se = se.empty() ? 0.0 : fifth_percentile(se);

    assign(probes_, probe_csf, s, probe_scratch_);
    std::size_t covered = 0;
    for (std::size_t i = 0; i < probes_.size; ++i)
    {
        const std::size_t t = probe_scratch_.tier[i];
        const std::uint8_t sf = probe_scratch_.subframe[i];
        const double v = weight[t][sf] * lg(probes_, probe_csf, i, t, sf)
                         / (loads_[probe_scratch_.load_slot[i]] + 1);
        if (v > threshold_se_)
        {
            ++covered;
        }
    }
    kpi.coverage_probability
        = probes_.size == 0 ? 0.0
                            : static_cast<double>(covered) / static_cast<double>(probes_.size);
    return kpi;
}

//---------------------------------------------------------------------------//
// Campaigns and sweeps
//---------------------------------------------------------------------------//
TrialRecord run_trial(const Scenario& scenario,
                      const IcicState& state,
                      std::uint64_t seed,
                      std::uint64_t trial,
                      Execution exec)
{
    scenario.validate();
    state.validate();
    const TrialData data = build_trial(scenario, seed, trial, exec);
    TrialOutcome outcome = evaluate_state_reference(data, state, scenario);
    TrialRecord rec;
    rec.trial = trial;
    rec.fifth_percentile_se = outcome.kpi.fifth_percentile_se;
    rec.coverage_probability = outcome.kpi.coverage_probability;
    rec.per_ue_se = std::move(outcome.per_ue_se);
    return rec;
}

KpiReport run_campaign(const Scenario& scenario,
                       const IcicState& state,
                       std::size_t trials,
                       std::uint64_t seed,
                       Execution exec)
{
    if (trials < 1)
    {
        throw ParameterError("a campaign needs at least one trial");
    }
    std::vector<TrialRecord> records(trials);
    if (exec == Execution::Parallel)
    {
        ExceptionSink sink;
        const auto n = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t t = 0; t < n; ++t)
        {
            sink.run([&] {
                records[static_cast<std::size_t>(t)]
                    = run_trial(scenario, state, seed, static_cast<std::uint64_t>(t));
            });
        }
        sink.rethrow();
    }
    else
    {
        for (std::size_t t = 0; t < trials; ++t)
        {
            records[t] = run_trial(scenario, state, seed, t);
        }
    }
    return aggregate(std::move(records), state, scenario.threshold_se, seed);
}

TrialKpi SweepResult::mean(std::size_t state) const
{
    TrialKpi m;
    for (std::size_t t = 0; t < trials; ++t)
    {
        m.fifth_percentile_se += at(state, t).fifth_percentile_se;
        m.coverage_probability += at(state, t).coverage_probability;
    }
    if (trials > 0)
    {
        m.fifth_percentile_se /= static_cast<double>(trials);
        m.coverage_probability /= static_cast<double>(trials);
    }
    return m;
}

namespace
{
void sweep_one_trial(const Scenario& scenario,
                     std::span<const IcicState> states,
                     std::uint64_t seed,
                     std::size_t trial,
                     SweepResult& out)
{
    const TrialData data = build_trial(scenario, seed, trial, Execution::Serial);
    StateEvaluator eval(data, scenario);
    for (std::size_t s = 0; s < states.size(); ++s)
    {
        out.values[s * out.trials + trial] = eval.evaluate(states[s]);
    }
}

SweepResult make_sweep(const Scenario& scenario,
                       std::span<const IcicState> states,
                       std::size_t trials)
{
    if (trials < 1)
    {
        throw ParameterError("a sweep needs at least one trial");
    }
    scenario.validate();
    for (const auto& s : states)
    {
        s.validate();
    }
    SweepResult r;
    r.states = states.size();
    r.trials = trials;
    r.values.resize(states.size() * trials);
    return r;
}
}  // namespace

SweepResult sweep_states_serial(const Scenario& scenario,
                                std::span<const IcicState> states,
                                std::size_t trials,
                                std::uint64_t seed)
{
    SweepResult r = make_sweep(scenario, states, trials);
    for (std::size_t t = 0; t < trials; ++t)
    {
        sweep_one_trial(scenario, states, seed, t, r);
    }
    return r;
}

SweepResult sweep_states_omp(const Scenario& scenario,
                             std::span<const IcicState> states,
                             std::size_t trials,
                             std::uint64_t seed)
{
    SweepResult r = make_sweep(scenario, states, trials);
    ExceptionSink sink;
    const auto n = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < n; ++t)
    {
        sink.run([&] {
            sweep_one_trial(scenario, states, seed, static_cast<std::size_t>(t), r);
        });
    }
    sink.rethrow();
    return r;
}

SweepResult sweep_states(const Scenario& scenario,
                         std::span<const IcicState> states,
                         std::size_t trials,
                         std::uint64_t seed,
                         Execution exec)
{
    return exec == Execution::Parallel
               ? sweep_states_omp(scenario, states, trials, seed)
               : sweep_states_serial(scenario, states, trials, seed);
}

}  // namespace aghetnet
