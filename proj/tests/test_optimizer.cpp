// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <set>
#include <sstream>
#include <tuple>

#include "aghetnet/optimizer.hpp"

using namespace aghetnet;

namespace
{
SearchGrid single()
{
    SearchGrid g;
    g.alpha_values = {1.0};
    g.alpha_pbs_values = {};
    g.beta_values = {0.5};
    g.rho_mbs_values = {30};
    g.rho_pbs_values = {0};
    g.rho_uabs_values = {0};
    g.tau_pbs_values = {0};
    g.tau_uabs_values = {0};
    return g;
}

Scenario small()
{
    Scenario s = Scenario::desk(4, 4);
    s.probe_resolution_m = 250;
    return s;
}

SweepResult fake_sweep(std::vector<double> fivepse, std::vector<double> coverage)
{
    SweepResult r;
    r.states = fivepse.size();
    r.trials = 1;
    for (std::size_t i = 0; i < fivepse.size(); ++i)
    {
        r.values.push_back({fivepse[i], coverage[i]});
    }
    return r;
}
}  // namespace

TEST_CASE("two alphas by two betas give four states")
{
    SearchGrid g = single();
    g.alpha_values = {0.0, 1.0};
    g.beta_values = {0.3, 0.7};
    const auto states = enumerate_states(g);
    REQUIRE(states.size() == 4);
    CHECK(g.size() == 4);
    std::set<std::pair<double, double>> seen;
    for (const auto& s : states)
    {
        CHECK(s.alpha_pbs == s.alpha_mbs);
        CHECK(s.beta_pbs == s.beta_mbs);
        seen.insert({s.alpha_mbs, s.beta_mbs});
    }
    CHECK(seen.size() == 4);
}

TEST_CASE("the default grid covers every bias pair and both PBS factors")
{
    const SearchGrid g;
    const auto states = enumerate_states(g);
    CHECK(states.size() == g.size());
    CHECK(states.size() == 5u * 5 * 3 * 5 * 5 * 3 * 5 * 5);
    std::set<std::pair<double, double>> tau;
    std::set<std::pair<double, double>> alpha;
    for (const auto& s : states)
    {
        tau.insert({s.tau_pbs_db, s.tau_uabs_db});
        alpha.insert({s.alpha_mbs, s.alpha_pbs});
        CHECK(s.beta_pbs == s.beta_mbs);
    }
    CHECK(tau.size() == 25);
    CHECK(alpha.size() == 25);
}

TEST_CASE("enumeration order is lexicographic with tau_uabs fastest")
{
    SearchGrid g = single();
    g.tau_pbs_values = {0, 3};
    g.tau_uabs_values = {0, 6};
    const auto s = enumerate_states(g);
    REQUIRE(s.size() == 4);
    CHECK(std::tie(s[0].tau_pbs_db, s[0].tau_uabs_db) == std::make_tuple(0.0, 0.0));
    CHECK(std::tie(s[1].tau_pbs_db, s[1].tau_uabs_db) == std::make_tuple(0.0, 6.0));
    CHECK(std::tie(s[2].tau_pbs_db, s[2].tau_uabs_db) == std::make_tuple(3.0, 0.0));
}

TEST_CASE("ICIC modes restrict the reduction factors")
{
    const SearchGrid g;
    for (const auto& s : enumerate_states(g.with_mode(IcicMode::None)))
    {
        CHECK(s.alpha_mbs == 1.0);
        CHECK(s.alpha_pbs == 1.0);
    }
    for (const auto& s : enumerate_states(g.with_mode(IcicMode::Eicic)))
    {
        CHECK(s.alpha_mbs == 0.0);
        CHECK(s.alpha_pbs == 0.0);
    }
    const auto f = g.with_mode(IcicMode::Feicic);
    CHECK(f.alpha_values == std::vector<double>{0.25, 0.5, 0.75});
    CHECK(f.alpha_pbs_values == std::vector<double>{0.25, 0.5, 0.75});
    CHECK(g.with_mode(IcicMode::Custom) == g);

    SearchGrid only_ends = g;
    only_ends.alpha_pbs_values = {0.0, 1.0};
    CHECK_THROWS_AS(only_ends.with_mode(IcicMode::Feicic), ConfigError);
}

TEST_CASE("an empty grid dimension is rejected")
{
    SearchGrid g = single();
    g.tau_pbs_values.clear();
    CHECK_THROWS_AS(enumerate_states(g), ConfigError);
}

TEST_CASE("best state selection and tie-break")
{
    std::vector<IcicState> states(4);
    for (std::size_t i = 0; i < states.size(); ++i)
    {
        states[i].tau_pbs_db = 3.0 * static_cast<double>(i);
    }
    const auto sweep = fake_sweep({0.1, 0.3, 0.3, 0.2}, {0.9, 0.5, 0.95, 0.95});
    const auto r = select_best(states, sweep, Objective::FivePse);
    CHECK(r.best_state.tau_pbs_db == 3.0);
    CHECK(r.best_value == 0.3);
    CHECK(r.evaluated == 4);
    CHECK(r.trace.size() == 4);
    const auto c = select_best(states, sweep, Objective::Coverage);
    CHECK(c.best_state.tau_pbs_db == 6.0);
    CHECK(c.best_kpi.fifth_percentile_se == 0.3);
    CHECK_THROWS_AS(select_best(std::span<const IcicState>(states).first(2), sweep, Objective::FivePse),
                    ParameterError);
}

TEST_CASE("one-state grid returns that state")
{
    const auto g = single();
    const auto r = optimize(g, small(), 2, 3);
    CHECK(r.evaluated == 1);
    CHECK(r.best_state == enumerate_states(g).front());
    const auto c = run_campaign(small(), r.best_state, 2, 3);
    CHECK(r.best_value == doctest::Approx(c.fifth_percentile_se).epsilon(1e-12));
}

TEST_CASE("grid search matches an exhaustive oracle on a toy grid")
{
    SearchGrid g = single();
    g.alpha_values = {0.0, 0.5, 1.0};
    g.tau_pbs_values = {0, 6};
    g.tau_uabs_values = {0, 9};
    g.rho_mbs_values = {20, 35};
    const Scenario s = small();
    const auto r = optimize(g, s, 2, 44);
    // Oracle: an independent campaign per state, keep the first strict maximum.
    double best = -1;
    IcicState arg;
    for (const auto& st : enumerate_states(g))
    {
        const double v = run_campaign(s, st, 2, 44, Execution::Serial).fifth_percentile_se;
        if (v > best + 1e-15)
        {
            best = v;
            arg = st;
        }
    }
    CHECK(r.best_value == doctest::Approx(best).epsilon(1e-12));
    CHECK(r.best_state == arg);
}

TEST_CASE("CRE surface keeps the best value per bias pair")
{
    std::vector<IcicState> states(4);
    states[0].tau_pbs_db = 0;
    states[1].tau_pbs_db = 0;
    states[1].alpha_mbs = 0.5;
    states[2].tau_pbs_db = 3;
    states[3].tau_pbs_db = 3;
    states[3].alpha_mbs = 0;
    const auto sweep = fake_sweep({0.1, 0.2, 0.4, 0.3}, {0.8, 0.7, 0.5, 0.6});
    const auto surf = cre_surface(states, sweep);
    REQUIRE(surf.size() == 2);
    CHECK(surf[0].tau_pbs_db == 0);
    CHECK(surf[0].fivepse == 0.2);
    CHECK(surf[0].coverage == 0.8);
    CHECK(surf[1].fivepse == 0.4);
    CHECK(surf[1].coverage == 0.6);
    std::ostringstream os;
    write_surface_csv(os, surf);
    CHECK(os.str().rfind("tau_pbs,tau_uabs,coverage,fivepse\n", 0) == 0);
}

TEST_CASE("trace CSV has one row per state")
{
    std::vector<IcicState> states(3);
    const auto r = select_best(states, fake_sweep({0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}), Objective::FivePse);
    std::ostringstream os;
    write_trace_csv(os, r);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line
          == "alpha_mbs,alpha_pbs,beta_mbs,beta_pbs,rho_mbs_db,rho_pbs_db,rho_uabs_db,"
             "tau_pbs_db,tau_uabs_db,fivepse,coverage,value");
    int rows = 0;
    while (std::getline(in, line))
    {
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("objective and mode names")
{
    CHECK(objective_from_string("5pse") == Objective::FivePse);
    CHECK(objective_from_string("coverage") == Objective::Coverage);
    CHECK_FALSE(objective_from_string("mean"));
    CHECK(icic_mode_from_string("feicic") == IcicMode::Feicic);
    CHECK_FALSE(icic_mode_from_string("abs"));
}
