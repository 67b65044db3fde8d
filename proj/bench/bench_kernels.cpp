// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bench/bench_kernels.cpp
//! Serial vs OpenMP kernels: link tables and state sweeps.
//---------------------------------------------------------------------------//
#include <benchmark/benchmark.h>

#include "aghetnet/optimizer.hpp"

namespace
{
using namespace aghetnet;

const Scenario& desk()
{
    static const Scenario s = Scenario::desk(25, 15);
    return s;
}

const TrialData& trial()
{
    static const TrialData t = build_trial(desk(), 1, 0);
    return t;
}

std::vector<IcicState> states()
{
    SearchGrid g;
    g.alpha_values = {0.5};
    g.alpha_pbs_values = {0.25, 0.75};
    g.beta_values = {0.5};
    g.rho_mbs_values = {30};
    g.rho_pbs_values = {0};
    g.rho_uabs_values = {0};
    return enumerate_states(g);
}

template<class Kernel>
void link_table(benchmark::State& state, Kernel kernel)
{
    set_worker_threads(static_cast<int>(state.range(0)));
    const auto& t = trial();
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(
            kernel(t.layout, t.ues, desk().channel, 1, StreamTag::UeLinks, 0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(t.ues.size()));
}

void BM_LinkTableSerial(benchmark::State& state)
{
    link_table(state, link_table_serial);
}

void BM_LinkTableOmp(benchmark::State& state)
{
    link_table(state, link_table_omp);
}

template<class Sweep>
void sweep(benchmark::State& state, Sweep fn)
{
    set_worker_threads(static_cast<int>(state.range(0)));
    const auto s = states();
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(fn(desk(), s, 2, 1));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(s.size()) * 2);
}

void BM_SweepSerial(benchmark::State& state)
{
    sweep(state, sweep_states_serial);
}

void BM_SweepOmp(benchmark::State& state)
{
    sweep(state, sweep_states_omp);
}

void BM_StateEvaluator(benchmark::State& state)
{
    StateEvaluator eval(trial(), desk());
    const auto s = states();
    std::size_t i = 0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(eval.evaluate(s[i++ % s.size()]));
    }
}
}  // namespace

BENCHMARK(BM_LinkTableSerial)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LinkTableOmp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOmp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StateEvaluator)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
