// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/kpi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aghetnet
{
double duty_weight(Tier serving_tier,
                   Subframe sf,
                   const IcicState& s,
                   UabsDutyNormalization norm)
{
    const bool usf = sf == Subframe::Usf;
    switch (serving_tier)
    {
        case Tier::Mbs: return usf ? s.beta_mbs : 1.0 - s.beta_mbs;
        case Tier::Pbs: return usf ? s.beta_pbs : 1.0 - s.beta_pbs;
        case Tier::Uabs:
        {
            const double scale = norm == UabsDutyNormalization::Half ? 0.5 : 1.0;
            const double b = s.beta_mbs + s.beta_pbs;
            return scale * (usf ? b : 2.0 - b);
        }
        default: throw ParameterError("duty weight requested for a user tier");
    }
}

double ue_spectral_efficiency(const UeAssignment& a,
                              const CellLoads& loads,
                              const IcicState& state,
                              UabsDutyNormalization norm)
{
    const int n = loads.count(a.serving_tier, a.serving_cell, a.subframe);
    if (n < 1)
    {
        throw std::logic_error("UE assigned to a cell subframe with zero load");
    }
    return spectral_efficiency(duty_weight(a.serving_tier, a.subframe, state, norm),
                               a.serving_sir(), n);
}

double fifth_percentile(std::span<const double> se)
{
    if (se.empty())
    {
        throw ParameterError("fifth percentile of an empty set");
    }
    std::vector<double> v(se.begin(), se.end());
    const auto rank = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(v.size())));
    const std::size_t k = std::max<std::size_t>(rank, 1) - 1;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

std::vector<Position> probe_grid(const SimArea& area, double resolution_m, double height_m)
{
    area.validate();
    if (!(resolution_m > 0))
    {
        throw ParameterError("probe resolution must be > 0");
    }
    const auto nx = static_cast<std::size_t>(std::max(1.0, std::floor(area.width_m / resolution_m)));
    const auto ny = static_cast<std::size_t>(std::max(1.0, std::floor(area.height_m / resolution_m)));
    const double px = area.width_m / static_cast<double>(nx);
    const double py = area.height_m / static_cast<double>(ny);
    std::vector<Position> out;
    out.reserve(nx * ny);
    for (std::size_t j = 0; j < ny; ++j)
    {
        for (std::size_t i = 0; i < nx; ++i)
        {
            out.push_back({(static_cast<double>(i) + 0.5) * px,
                           (static_cast<double>(j) + 0.5) * py, height_m});
        }
    }
    return out;
}

double probe_spectral_efficiency(const UeAssignment& probe,
                                 const CellLoads& loads,
                                 const IcicState& state,
                                 UabsDutyNormalization norm)
{
    const int n = loads.count(probe.serving_tier, probe.serving_cell, probe.subframe) + 1;
    return spectral_efficiency(duty_weight(probe.serving_tier, probe.subframe, state, norm),
                               probe.serving_sir(), n);
}

double coverage_probability(std::span<const UeAssignment> probes,
                            const CellLoads& loads,
                            const IcicState& state,
                            UabsDutyNormalization norm,
                            double threshold_se)
{
    if (probes.empty())
    {
        return 0.0;
    }
    std::size_t covered = 0;
    for (const auto& p : probes)
    {
        if (probe_spectral_efficiency(p, loads, state, norm) > threshold_se)
        {
            ++covered;
        }
    }
    return static_cast<double>(covered) / static_cast<double>(probes.size());
}

KpiReport aggregate(std::vector<TrialRecord> records,
                    const IcicState& state,
                    double threshold_se,
                    std::uint64_t seed)
{
    KpiReport r;
    r.state = state;
    r.threshold_se = threshold_se;
    r.seed = seed;
    r.trials = records.size();
    double se = 0;
    double cov = 0;
    for (const auto& rec : records)
    {
        se += rec.fifth_percentile_se;
        cov += rec.coverage_probability;
    }
    if (!records.empty())
    {
        r.fifth_percentile_se = se / static_cast<double>(records.size());
        r.coverage_probability = cov / static_cast<double>(records.size());
    }
    r.records = std::move(records);
    return r;
}

}  // namespace aghetnet
