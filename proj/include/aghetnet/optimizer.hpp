// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/optimizer.hpp
//! Exhaustive search over uniform ICIC/CRE states.
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "aghetnet/simulation.hpp"

namespace aghetnet
{
enum class Objective
{
    FivePse,
    Coverage
};

enum class IcicMode
{
    None,    //!< alpha = 1
    Eicic,   //!< alpha = 0, almost blank subframes
    Feicic,  //!< 0 < alpha < 1, reduced power subframes
    Custom   //!< the grid's alpha list as given
};

std::string_view to_string(Objective o);
std::optional<Objective> objective_from_string(std::string_view s);
std::string_view to_string(IcicMode m);
std::optional<IcicMode> icic_mode_from_string(std::string_view s);

//! Cartesian search grid. An empty PBS list ties that PBS parameter to the
//! MBS value; a non-empty one adds a dimension. By default alpha is searched
//! per tier and beta is shared.
struct SearchGrid
{
    std::vector<double> alpha_values{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> alpha_pbs_values{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> beta_values{0.3, 0.5, 0.7};
    std::vector<double> beta_pbs_values;
    std::vector<double> rho_mbs_values{20, 25, 30, 35, 40};
    std::vector<double> rho_pbs_values{-10, -5, 0, 5, 10};
    std::vector<double> rho_uabs_values{-5, 0, 5};
    std::vector<double> tau_pbs_values{0, 3, 6, 9, 12};
    std::vector<double> tau_uabs_values{0, 3, 6, 9, 12};
    Objective objective{Objective::FivePse};

    //! Copy with the alpha dimension(s) restricted per the mode: None keeps
    //! {1}, Eicic {0}, Feicic the values strictly inside (0, 1).
    SearchGrid with_mode(IcicMode mode) const;
    //! Throws ConfigError on an empty dimension.
    void validate() const;
    std::size_t size() const;

    friend bool operator==(const SearchGrid&, const SearchGrid&) = default;
};

//! Lexicographic order: alpha, alpha_pbs, beta, beta_pbs, rho_mbs, rho_pbs,
//! rho_uabs, tau_pbs, tau_uabs (last varies fastest).
std::vector<IcicState> enumerate_states(const SearchGrid& grid);

struct TraceEntry
{
    IcicState state;
    TrialKpi kpi;  //!< trial-mean KPIs
    double value{0};  //!< the objective's KPI
};

struct SearchResult
{
    IcicState best_state;
    double best_value{0};
    TrialKpi best_kpi;
    std::size_t evaluated{0};
    std::vector<TraceEntry> trace;
};

//! argmax of the objective over an evaluated sweep; ties keep the first
//! state in enumeration order.
SearchResult select_best(std::span<const IcicState> states,
                         const SweepResult& sweep,
                         Objective objective);

//! Evaluates every grid state on the same trials (common random numbers)
//! and returns the best.
SearchResult optimize(const SearchGrid& grid,
                      const Scenario& scenario,
                      std::size_t trials,
                      std::uint64_t seed,
                      Execution exec = Execution::Parallel);

struct SurfacePoint
{
    double tau_pbs_db{0};
    double tau_uabs_db{0};
    double coverage{0};  //!< best trial-mean coverage at this bias pair
    double fivepse{0};   //!< best trial-mean 5pSE at this bias pair
};

//! Peak KPIs per (tau_pbs, tau_uabs) pair, each maximized independently over
//! the remaining dimensions. Rows follow tau_pbs-major order.
std::vector<SurfacePoint> cre_surface(std::span<const IcicState> states,
                                      const SweepResult& sweep);

void write_trace_csv(std::ostream& os, const SearchResult& result);
void write_surface_csv(std::ostream& os, std::span<const SurfacePoint> surface);

}  // namespace aghetnet
