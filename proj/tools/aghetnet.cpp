// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/aghetnet.cpp
//! Command-line driver: simulate, optimize, plcdf, surface.
//---------------------------------------------------------------------------//
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "aghetnet/config.hpp"
#include "aghetnet/report.hpp"

namespace
{
using namespace aghetnet;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonOptions
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::string> icic;
    std::optional<double> uabs_height;
    std::optional<std::string> objective;
    int threads{0};
    std::string out;
};

struct ExtraOutputs
{
    std::string kpi_csv;
    std::string assignments_csv;
    std::string layout_csv;
    std::string trace_csv;
    std::size_t max_points{512};
};

void add_common(CLI::App& cmd, CommonOptions& o, bool with_objective)
{
    cmd.add_option("--config", o.config_path, "JSON configuration file")
        ->check(CLI::ExistingFile);
    cmd.add_option("--seed", o.seed, "Master seed (overrides the config)");
    cmd.add_option("--trials", o.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
    cmd.add_option("--icic", o.icic, "ICIC mode")
        ->check(CLI::IsMember({"none", "eicic", "feicic"}));
    cmd.add_option("--uabs-height", o.uabs_height, "UABS height scenario in m")
        ->check(CLI::IsMember({36.0, 50.0}));
    if (with_objective)
    {
        cmd.add_option("--objective", o.objective, "Search objective")
            ->check(CLI::IsMember({"5pse", "coverage"}));
    }
    cmd.add_option("--threads", o.threads, "Worker threads (0 keeps the OpenMP default)")
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--out", o.out, "Output path (stdout when omitted)");
}

SimConfig resolve_config(const CommonOptions& o)
{
    SimConfig c = o.config_path.empty() ? config_from_string("") : load_config(o.config_path);
    if (o.seed)
    {
        c.seed = *o.seed;
    }
    if (o.trials)
    {
        c.trials = *o.trials;
    }
    if (o.icic)
    {
        c.icic = *icic_mode_from_string(*o.icic);
    }
    if (o.uabs_height)
    {
        c.set_uabs_height(*o.uabs_height);
    }
    if (o.objective)
    {
        c.grid.objective = *objective_from_string(*o.objective);
    }
    if (!o.out.empty())
    {
        c.out = o.out;
    }
    if (o.threads > 0)
    {
        set_worker_threads(o.threads);
    }
    c.validate();
    c.require_seed();
    return c;
}

//! Applies the ICIC mode to a single state.
IcicState state_for_mode(IcicState s, IcicMode mode)
{
    switch (mode)
    {
        case IcicMode::None: s.alpha_mbs = s.alpha_pbs = 1.0; break;
        case IcicMode::Eicic: s.alpha_mbs = s.alpha_pbs = 0.0; break;
        case IcicMode::Feicic:
            if (!(s.alpha_mbs > 0 && s.alpha_mbs < 1 && s.alpha_pbs > 0 && s.alpha_pbs < 1))
            {
                throw ConfigError("feicic needs 0 < alpha < 1 in state.alpha_mbs and "
                                  "state.alpha_pbs");
            }
            break;
        case IcicMode::Custom: break;
    }
    return s;
}

template<class Write>
void write_to(const std::string& path, Write write)
{
    if (path.empty() || path == "-")
    {
        write(std::cout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
    {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    write(os);
    if (!os)
    {
        throw std::runtime_error("failed writing " + path);
    }
    spdlog::info("wrote {}", path);
}

void write_document(const std::string& path, const nlohmann::json& doc)
{
    write_to(path, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

void log_warnings(const SimConfig& c)
{
    for (const auto& w : c.scenario.channel.warnings())
    {
        spdlog::warn("{}", w);
    }
}

int run_simulate(const CommonOptions& o, const ExtraOutputs& x)
{
    const SimConfig c = resolve_config(o);
    log_warnings(c);
    const IcicState state = state_for_mode(c.state, c.icic);
    const std::uint64_t seed = c.require_seed();
    spdlog::info("simulate: {} trials, seed {}, uabs height {} m", c.trials, seed,
                 c.uabs_height_m);
    const KpiReport report = run_campaign(c.scenario, state, c.trials, seed);
    spdlog::info("5pSE {:.6g} bps/Hz, coverage {:.6g}", report.fifth_percentile_se,
                 report.coverage_probability);
    write_document(c.out, result_document("simulate", c, to_json(report), utc_timestamp()));
    if (!x.kpi_csv.empty())
    {
        write_to(x.kpi_csv, [&](std::ostream& os) { write_kpi_csv(os, report); });
    }
    if (!x.assignments_csv.empty() || !x.layout_csv.empty())
    {
        const TrialData trial = build_trial(c.scenario, seed, 0, Execution::Parallel);
        if (!x.layout_csv.empty())
        {
            write_to(x.layout_csv, [&](std::ostream& os) { write_layout_csv(os, trial.layout); });
        }
        if (!x.assignments_csv.empty())
        {
            const auto outcome = evaluate_state_reference(trial, state, c.scenario);
            write_to(x.assignments_csv,
                     [&](std::ostream& os) { write_assignment_csv(os, outcome.ues); });
        }
    }
    return kExitOk;
}

int run_optimize(const CommonOptions& o, const ExtraOutputs& x)
{
    const SimConfig c = resolve_config(o);
    log_warnings(c);
    const SearchGrid grid = c.grid.with_mode(c.icic);
    const std::uint64_t seed = c.require_seed();
    spdlog::info("optimize: {} states x {} trials, objective {}, icic {}", grid.size(),
                 c.trials, to_string(grid.objective), to_string(c.icic));
    const SearchResult r = optimize(grid, c.scenario, c.trials, seed);
    for (std::size_t i = 0; i < r.trace.size(); ++i)
    {
        const auto& e = r.trace[i];
        spdlog::debug("state {}/{}: 5pSE {:.6g} coverage {:.6g}", i + 1, r.trace.size(),
                      e.kpi.fifth_percentile_se, e.kpi.coverage_probability);
    }
    spdlog::info("best {} = {:.6g}", to_string(grid.objective), r.best_value);
    write_document(c.out, result_document("optimize", c, to_json(r), utc_timestamp()));
    if (!x.trace_csv.empty())
    {
        write_to(x.trace_csv, [&](std::ostream& os) { write_trace_csv(os, r); });
    }
    return kExitOk;
}

int run_surface(const CommonOptions& o)
{
    const SimConfig c = resolve_config(o);
    log_warnings(c);
    const SearchGrid grid = c.grid.with_mode(c.icic);
    const auto states = enumerate_states(grid);
    spdlog::info("surface: {} states x {} trials, icic {}", states.size(), c.trials,
                 to_string(c.icic));
    const SweepResult sweep = sweep_states(c.scenario, states, c.trials, c.require_seed());
    const auto surface = cre_surface(states, sweep);
    write_to(c.out, [&](std::ostream& os) { write_surface_csv(os, surface); });
    return kExitOk;
}

int run_plcdf(const CommonOptions& o, const ExtraOutputs& x)
{
    const SimConfig c = resolve_config(o);
    log_warnings(c);
    const std::uint64_t seed = c.require_seed();
    auto layout_rng = substream(seed, StreamTag::Layout, 0);
    const NetworkLayout layout = build_layout(c.scenario.tiers, c.scenario.area, layout_rng);
    auto rng = substream(seed, StreamTag::PathLossCdf, 0);
    const PathLossCdf cdf = path_loss_cdf(layout, c.scenario.channel, rng);
    write_to(c.out, [&](std::ostream& os) { write_path_loss_cdf_csv(os, cdf, x.max_points); });

    // Reference endpoints of the three classes, in dB, with their bands.
    struct Endpoint
    {
        LinkClass cls;
        double expected;
        double band;
        const char* note;
    };
    const Endpoint endpoints[] = {{LinkClass::Gtg, 255, 25, " (informative)"},
                                  {LinkClass::Ata, 216, 10, ""},
                                  {LinkClass::Atg, 154, 10, ""}};
    for (const auto& e : endpoints)
    {
        const auto& v = cdf.of(e.cls);
        if (v.empty())
        {
            std::cerr << to_string(e.cls) << ": no links\n";
            continue;
        }
        const double max = v.back();
        const bool ok = std::abs(max - e.expected) <= e.band;
        std::cerr << to_string(e.cls) << ": " << v.size() << " links, max " << max
                  << " dB, reference " << e.expected << " +/- " << e.band << " dB "
                  << (ok ? "within" : "outside") << " band" << e.note << '\n';
    }
    return kExitOk;
}

void configure_logging()
{
    auto logger = spdlog::stderr_color_mt("aghetnet");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::info);
    if (const char* env = std::getenv("AGHETNET_LOG"))
    {
        const auto level = spdlog::level::from_str(env);
        if (level == spdlog::level::off && std::string(env) != "off")
        {
            spdlog::warn("AGHETNET_LOG={} is not a log level; keeping info", env);
        }
        else
        {
            spdlog::set_level(level);
        }
    }
}

}  // namespace

int main(int argc, char** argv)
{
    configure_logging();

    CLI::App app{"Monte-Carlo simulator for air/ground LTE-A HetNets with eICIC/FeICIC "
                 "and cell range expansion"};
    app.require_subcommand(1);

    CommonOptions opts;
    ExtraOutputs extra;

    auto* simulate = app.add_subcommand("simulate", "Run one ICIC state over the trials");
    add_common(*simulate, opts, false);
    simulate->add_option("--kpi-csv", extra.kpi_csv, "Per-trial KPI table");
    simulate->add_option("--assignments-csv", extra.assignments_csv,
                         "Trial-0 UE assignments");
    simulate->add_option("--layout-csv", extra.layout_csv, "Trial-0 node positions");

    auto* optimize_cmd = app.add_subcommand("optimize", "Grid search for the best state");
    add_common(*optimize_cmd, opts, true);
    optimize_cmd->add_option("--trace-csv", extra.trace_csv, "Every evaluated state");

    auto* plcdf = app.add_subcommand("plcdf", "Path-loss CDF per link class");
    add_common(*plcdf, opts, false);
    plcdf->add_option("--max-points", extra.max_points, "CDF rows per link class")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));

    auto* surface = app.add_subcommand("surface", "Peak KPIs over the CRE bias pairs");
    add_common(*surface, opts, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kExitUsage;
    }

    try
    {
        if (simulate->parsed())
        {
            return run_simulate(opts, extra);
        }
        if (optimize_cmd->parsed())
        {
            return run_optimize(opts, extra);
        }
        if (plcdf->parsed())
        {
            return run_plcdf(opts, extra);
        }
        return run_surface(opts);
    }
    catch (const ConfigError& e)
    {
        spdlog::error("{}", e.what());
        return kExitUsage;
    }
    catch (const std::exception& e)
    {
        spdlog::error("{}", e.what());
        return kExitRuntime;
    }
}
