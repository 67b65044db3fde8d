// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/kpi.hpp
//! Per-UE spectral efficiency, fifth-percentile SE and area coverage.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aghetnet/association.hpp"
#include "aghetnet/scenario.hpp"

namespace aghetnet
{
//! Time share of the serving tier's subframe under the state's duty cycles.
double duty_weight(Tier serving_tier,
                   Subframe sf,
                   const IcicState& state,
                   UabsDutyNormalization norm);

//! weight * log2(1 + sir) / load
inline double spectral_efficiency(double weight, double sir, int load)
{
    return weight * std::log2(1.0 + sir) / load;
}

//! SE of a scheduled UE, sharing its cell subframe equally with the other
//! UEs counted in loads. Throws std::logic_error if that load is zero.
double ue_spectral_efficiency(const UeAssignment& a,
                              const CellLoads& loads,
                              const IcicState& state,
                              UabsDutyNormalization norm);

//! Lower nearest-rank 5th percentile: sorted[ceil(0.05 n) - 1].
//! Throws ParameterError on an empty input.
double fifth_percentile(std::span<const double> se);

//! Probe points on a regular grid of the given pitch, cell-centered.
std::vector<Position> probe_grid(const SimArea& area, double resolution_m, double height_m);

//! SE of a probe that would join its serving cell subframe as one extra UE
//! without changing the loads of the real population.
double probe_spectral_efficiency(const UeAssignment& probe,
                                 const CellLoads& loads,
                                 const IcicState& state,
                                 UabsDutyNormalization norm);

//! Fraction of probes whose SE exceeds threshold_se.
double coverage_probability(std::span<const UeAssignment> probes,
                            const CellLoads& loads,
                            const IcicState& state,
                            UabsDutyNormalization norm,
                            double threshold_se);

struct TrialRecord
{
    std::uint64_t trial{0};
    double fifth_percentile_se{0};
    double coverage_probability{0};
    std::vector<double> per_ue_se;
};

struct KpiReport
{
    double fifth_percentile_se{0};
    double coverage_probability{0};
    std::size_t trials{0};
    double threshold_se{0};
    IcicState state;
    std::uint64_t seed{0};
    std::vector<TrialRecord> records;
};

//! Trial mean of both KPIs over the given records.
KpiReport aggregate(std::vector<TrialRecord> records,
                    const IcicState& state,
                    double threshold_se,
                    std::uint64_t seed);

}  // namespace aghetnet
