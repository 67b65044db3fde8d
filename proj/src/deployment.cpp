// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/deployment.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <string>

namespace aghetnet
{
namespace
{
// Smallest lattice pitch accepted; matches the minimum link distance.
constexpr double kMinPitchM = 1.0;
}  // namespace

void SimArea::validate() const
{
    if (!(width_m > 0) || !(height_m > 0) || !std::isfinite(width_m)
        || !std::isfinite(height_m))
    {
        throw ParameterError("simulation area sides must be positive and finite");
    }
}

SimArea SimArea::square_km2(double km2)
{
    if (!(km2 > 0))
    {
        throw ParameterError("simulation area must be positive");
    }
    const double side = std::sqrt(km2) * 1000.0;
    return SimArea{side, side};
}

void TierSpec::validate() const
{
    const std::string name{to_string(tier)};
    if (intensity_per_km2 < 0 || !std::isfinite(intensity_per_km2))
    {
        throw ParameterError(name + ": intensity must be >= 0");
    }
    if (count < 0)
    {
        throw ParameterError(name + ": count must be >= 0");
    }
    if (!(height_m > 0))
    {
        throw ParameterError(name + ": height must be > 0");
    }
}

const std::vector<Position>& NetworkLayout::nodes(Tier tier) const
{
    switch (tier)
    {
        case Tier::Mbs: return mbs;
        case Tier::Pbs: return pbs;
        case Tier::Uabs: return uabs;
        case Tier::Gue: return gue;
        case Tier::Aue: return aue;
    }
    throw ParameterError("unknown tier");
}

std::vector<Position>& NetworkLayout::nodes(Tier tier)
{
    return const_cast<std::vector<Position>&>(
        static_cast<const NetworkLayout&>(*this).nodes(tier));
}

double NetworkLayout::tx_power(Tier bs_tier) const
{
    if (!is_base_station(bs_tier))
    {
        throw ParameterError("transmit power requested for a user tier");
    }
    return tx_power_dbm[static_cast<std::size_t>(bs_tier)];
}

std::vector<Position> sample_ppp(const SimArea& area,
                                 double intensity_per_km2,
                                 double height_m,
                                 Xoshiro256& rng)
{
    area.validate();
    if (intensity_per_km2 < 0 || !std::isfinite(intensity_per_km2))
    {
        throw ParameterError("PPP intensity must be >= 0");
    }
    const double mean = intensity_per_km2 * area.area_km2();
    if (mean == 0)
    {
        return {};
    }
    std::poisson_distribution<long> count_dist(mean);
    const long n = count_dist(rng);

    std::vector<Position> points;
    points.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
    {
        const double x = rng.uniform_open() * area.width_m;
        const double y = rng.uniform_open() * area.height_m;
        points.push_back({x, y, height_m});
    }
    return points;
}

GridShape hex_grid_shape(const SimArea& area, int count)
{
    area.validate();
    if (count < 1)
    {
        throw ParameterError("hex grid needs at least one point");
    }
    const double target = std::log(area.width_m / area.height_m);
    GridShape best;
    double best_score = std::numeric_limits<double>::infinity();
    for (int rows = 1; rows <= count; ++rows)
    {
        if (count % rows != 0)
        {
            continue;
        }
        const int cols = count / rows;
        const double score = std::abs(
            std::log(static_cast<double>(cols) / rows) - target);
        if (score < best_score - 1e-12)
        {
            best_score = score;
            best = {rows, cols};
        }
    }
    return best;
}

std::vector<Position> hex_grid(const SimArea& area, int count, double height_m)
{
    const GridShape shape = hex_grid_shape(area, count);
    const double pitch_x = area.width_m / shape.cols;
    const double pitch_y = area.height_m / shape.rows;
    if (pitch_x < kMinPitchM || pitch_y < kMinPitchM)
    {
        throw ParameterError("hex grid of " + std::to_string(count)
                             + " points does not fit the area at >= 1 m spacing");
    }
    // Odd rows reach half a pitch further right; shift back by a quarter
    // pitch so the lattice is centered.
    const double shift = shape.rows > 1 ? pitch_x / 4 : 0.0;

    std::vector<Position> points;
    points.reserve(static_cast<std::size_t>(count));
    for (int r = 0; r < shape.rows; ++r)
    {
        const double offset = (r % 2 == 1) ? 0.5 : 0.0;
        for (int c = 0; c < shape.cols; ++c)
        {
            const double x = (c + 0.5 + offset) * pitch_x - shift;
            const double y = (r + 0.5) * pitch_y;
            points.push_back({x, y, height_m});
        }
    }
    return points;
}

NetworkLayout build_layout(std::span<const TierSpec> specs,
                           const SimArea& area,
                           Xoshiro256& rng)
{
    area.validate();
    std::array<const TierSpec*, 5> by_tier{};
    for (const auto& spec : specs)
    {
        spec.validate();
        auto& slot = by_tier[static_cast<std::size_t>(spec.tier)];
        if (slot)
        {
            throw ConfigError("duplicate tier spec: "
                              + std::string(to_string(spec.tier)));
        }
        slot = &spec;
    }
    for (std::size_t i = 0; i < by_tier.size(); ++i)
    {
        if (!by_tier[i])
        {
            throw ConfigError("missing tier spec: "
                              + std::string(to_string(static_cast<Tier>(i))));
        }
    }

    NetworkLayout layout;
    // One seed per tier, drawn in fixed tier order, so tiers are independent
    // and a tier's points do not move when another tier's intensity changes.
    for (std::size_t i = 0; i < by_tier.size(); ++i)
    {
        const TierSpec& spec = *by_tier[i];
        const std::uint64_t tier_seed = rng();
        auto& out = layout.nodes(spec.tier);
        if (spec.placement == Placement::HexGrid)
        {
            out = spec.count > 0 ? hex_grid(area, spec.count, spec.height_m)
                                 : std::vector<Position>{};
        }
        else
        {
            Xoshiro256 tier_rng{tier_seed};
            out = sample_ppp(area, spec.intensity_per_km2, spec.height_m,
                             tier_rng);
        }
        if (is_base_station(spec.tier))
        {
            layout.tx_power_dbm[i] = spec.tx_power_dbm;
        }
    }
    return layout;
}

void write_layout_csv(std::ostream& os, const NetworkLayout& layout)
{
    const auto precision = os.precision(10);
    os << "tier,x_m,y_m,z_m\n";
    for (Tier t : {Tier::Mbs, Tier::Pbs, Tier::Uabs, Tier::Gue, Tier::Aue})
    {
        for (const auto& p : layout.nodes(t))
        {
            os << to_string(t) << ',' << p.x << ',' << p.y << ',' << p.z
               << '\n';
        }
    }
    os.precision(precision);
}

}  // namespace aghetnet
