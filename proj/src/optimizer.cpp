// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <string>

namespace aghetnet
{
std::string_view to_string(Objective o)
{
    return o == Objective::FivePse ? "5pse" : "coverage";
}

std::optional<Objective> objective_from_string(std::string_view s)
{
    if (s == "5pse")
    {
        return Objective::FivePse;
    }
    if (s == "coverage")
    {
        return Objective::Coverage;
    }
    return std::nullopt;
}

std::string_view to_string(IcicMode m)
{
    switch (m)
    {
        case IcicMode::None: return "none";
        case IcicMode::Eicic: return "eicic";
        case IcicMode::Feicic: return "feicic";
        case IcicMode::Custom: return "custom";
    }
    return "unknown";
}

std::optional<IcicMode> icic_mode_from_string(std::string_view s)
{
    for (IcicMode m : {IcicMode::None, IcicMode::Eicic, IcicMode::Feicic, IcicMode::Custom})
    {
        if (to_string(m) == s)
        {
            return m;
        }
    }
    return std::nullopt;
}

SearchGrid SearchGrid::with_mode(IcicMode mode) const
{
    SearchGrid g = *this;
    auto restrict = [mode](std::vector<double>& v) {
        switch (mode)
        {
            case IcicMode::None: v = {1.0}; break;
            case IcicMode::Eicic: v = {0.0}; break;
            case IcicMode::Feicic:
                std::erase_if(v, [](double a) { return !(a > 0 && a < 1); });
                break;
            case IcicMode::Custom: break;
        }
    };
    restrict(g.alpha_values);
    if (!g.alpha_pbs_values.empty())
    {
        restrict(g.alpha_pbs_values);
        if (g.alpha_pbs_values.empty())
        {
            throw ConfigError("no alpha_pbs value fits ICIC mode '"
                              + std::string(to_string(mode)) + "'");
        }
    }
    return g;
}

void SearchGrid::validate() const
{
    const std::pair<const char*, const std::vector<double>*> dims[] = {
        {"alpha", &alpha_values},
        {"beta", &beta_values},
        {"rho_mbs", &rho_mbs_values},
        {"rho_pbs", &rho_pbs_values},
        {"rho_uabs", &rho_uabs_values},
        {"tau_pbs", &tau_pbs_values},
        {"tau_uabs", &tau_uabs_values},
    };
    for (const auto& [name, values] : dims)
    {
        if (values->empty())
        {
            throw ConfigError(std::string("search grid dimension '") + name + "' is empty");
        }
    }
}

std::size_t SearchGrid::size() const
{
    auto n = [](const std::vector<double>& v, std::size_t if_empty = 1) {
        return v.empty() ? if_empty : v.size();
    };
    return alpha_values.size() * n(alpha_pbs_values) * beta_values.size()
           * n(beta_pbs_values) * rho_mbs_values.size() * rho_pbs_values.size()
           * rho_uabs_values.size() * tau_pbs_values.size() * tau_uabs_values.size();
}

std::vector<IcicState> enumerate_states(const SearchGrid& g)
{
    g.validate();
    // An empty PBS list follows the MBS value; encode that as a NaN marker.
    const std::vector<double> follow{std::numeric_limits<double>::quiet_NaN()};
    const auto& alpha_pbs = g.alpha_pbs_values.empty() ? follow : g.alpha_pbs_values;
    const auto& beta_pbs = g.beta_pbs_values.empty() ? follow : g.beta_pbs_values;

    std::vector<IcicState> out;
    out.reserve(g.size());
    for (double am : g.alpha_values)
        for (double ap : alpha_pbs)
            for (double bm : g.beta_values)
                for (double bp : beta_pbs)
                    for (double rm : g.rho_mbs_values)
                        for (double rp : g.rho_pbs_values)
                            for (double ru : g.rho_uabs_values)
                                for (double tp : g.tau_pbs_values)
                                    for (double tu : g.tau_uabs_values)
                                    {
                                        IcicState s;
                                        s.alpha_mbs = am;
                                        s.alpha_pbs = std::isnan(ap) ? am : ap;
                                        s.beta_mbs = bm;
                                        s.beta_pbs = std::isnan(bp) ? bm : bp;
                                        s.rho_mbs_db = rm;
                                        s.rho_pbs_db = rp;
                                        s.rho_uabs_db = ru;
                                        s.tau_pbs_db = tp;
                                        s.tau_uabs_db = tu;
                                        out.push_back(s);
                                    }
    return out;
}

namespace
{
double objective_value(const TrialKpi& k, Objective o)
{
    return o == Objective::FivePse ? k.fifth_percentile_se : k.coverage_probability;
}
}  // namespace

SearchResult select_best(std::span<const IcicState> states,
                         const SweepResult& sweep,
                         Objective objective)
{
    if (states.empty() || sweep.states != states.size())
    {
        throw ParameterError("sweep does not match the state list");
    }
    SearchResult r;
    r.evaluated = states.size();
    r.trace.reserve(states.size());
    for (std::size_t s = 0; s < states.size(); ++s)
    {
        const TrialKpi k = sweep.mean(s);
        const double v = objective_value(k, objective);
        r.trace.push_back({states[s], k, v});
        if (s == 0 || v > r.best_value)
        {
            r.best_value = v;
            r.best_state = states[s];
            r.best_kpi = k;
        }
    }
    return r;
}

SearchResult optimize(const SearchGrid& grid,
                      const Scenario& scenario,
                      std::size_t trials,
                      std::uint64_t seed,
                      Execution exec)
{
    const auto states = enumerate_states(grid);
    const SweepResult sweep = sweep_states(scenario, states, trials, seed, exec);
    return select_best(states, sweep, grid.objective);
}

std::vector<SurfacePoint> cre_surface(std::span<const IcicState> states,
                                      const SweepResult& sweep)
{
    if (sweep.states != states.size())
    {
        throw ParameterError("sweep does not match the state list");
    }
    std::map<std::pair<double, double>, SurfacePoint> by_pair;
    for (std::size_t s = 0; s < states.size(); ++s)
    {
        const TrialKpi k = sweep.mean(s);
        const auto key = std::make_pair(states[s].tau_pbs_db, states[s].tau_uabs_db);
        auto [it, inserted] = by_pair.try_emplace(
            key, SurfacePoint{key.first, key.second, k.coverage_probability,
                              k.fifth_percentile_se});
        if (!inserted)
        {
            it->second.coverage = std::max(it->second.coverage, k.coverage_probability);
            it->second.fivepse = std::max(it->second.fivepse, k.fifth_percentile_se);
        }
    }
    std::vector<SurfacePoint> out;
    out.reserve(by_pair.size());
    for (const auto& [key, point] : by_pair)
    {
        out.push_back(point);
    }
    return out;
}

void write_trace_csv(std::ostream& os, const SearchResult& result)
{
    const auto precision = os.precision(10);
    os << "alpha_mbs,alpha_pbs,beta_mbs,beta_pbs,rho_mbs_db,rho_pbs_db,rho_uabs_db,"
          "tau_pbs_db,tau_uabs_db,fivepse,coverage,value\n";
    for (const auto& e : result.trace)
    {
        const auto& s = e.state;
        os << s.alpha_mbs << ',' << s.alpha_pbs << ',' << s.beta_mbs << ','
           << s.beta_pbs << ',' << s.rho_mbs_db << ',' << s.rho_pbs_db << ','
           << s.rho_uabs_db << ',' << s.tau_pbs_db << ',' << s.tau_uabs_db << ','
           << e.kpi.fifth_percentile_se << ',' << e.kpi.coverage_probability << ','
           << e.value << '\n';
    }
    os.precision(precision);
}

void write_surface_csv(std::ostream& os, std::span<const SurfacePoint> surface)
{
    const auto precision = os.precision(10);
    os << "tau_pbs,tau_uabs,coverage,fivepse\n";
    for (const auto& p : surface)
    {
        os << p.tau_pbs_db << ',' << p.tau_uabs_db << ',' << p.coverage << ','
           << p.fivepse << '\n';
    }
    os.precision(precision);
}

}  // namespace aghetnet
