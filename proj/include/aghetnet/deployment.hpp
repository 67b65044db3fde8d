// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/deployment.hpp
//! Spatial layout of the three base-station tiers and the two user tiers.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "aghetnet/rng.hpp"
#include "aghetnet/types.hpp"

namespace aghetnet
{
//! Rectangular simulation area with its origin at (0, 0).
struct SimArea
{
    double width_m{10000};
    double height_m{10000};

    double area_km2() const { return width_m * height_m * 1e-6; }
    void validate() const;

    //! Square area of the given size.
    static SimArea square_km2(double km2);

    friend bool operator==(const SimArea&, const SimArea&) = default;
};

enum class Placement
{
    Ppp,
    HexGrid
};

struct TierSpec
{
    Tier tier{Tier::Gue};
    Placement placement{Placement::Ppp};
    double intensity_per_km2{0};  //!< drives Ppp placement
    int count{0};                 //!< drives HexGrid placement
    double tx_power_dbm{0};       //!< base-station tiers only
    double height_m{1.5};

    void validate() const;

    friend bool operator==(const TierSpec&, const TierSpec&) = default;
};

//! Positions of every node, grouped by tier, plus per-tier metadata.
struct NetworkLayout
{
    std::vector<Position> mbs;
    std::vector<Position> pbs;
    std::vector<Position> uabs;
    std::vector<Position> gue;
    std::vector<Position> aue;

    //! Transmit power per base-station tier, indexed MBS, PBS, UABS.
    std::array<double, 3> tx_power_dbm{46, 30, 26};

    const std::vector<Position>& nodes(Tier tier) const;
    std::vector<Position>& nodes(Tier tier);
    double tx_power(Tier bs_tier) const;
    std::size_t base_station_count() const
    {
        return mbs.size() + pbs.size() + uabs.size();
    }
};

//! Homogeneous 2D PPP: Poisson count, then uniform placement.
std::vector<Position> sample_ppp(const SimArea& area,
                                 double intensity_per_km2,
                                 double height_m,
                                 Xoshiro256& rng);

struct GridShape
{
    int rows{1};
    int cols{1};
};

//! rows x cols factorization of count whose cols/rows ratio is nearest to
//! the area aspect ratio. Ties go to fewer rows.
GridShape hex_grid_shape(const SimArea& area, int count);

//! Offset-row lattice: odd rows shifted by half a column pitch, whole lattice
//! centered horizontally. No randomness.
std::vector<Position> hex_grid(const SimArea& area, int count, double height_m);

//! Samples every PPP tier from its own substream and places grid tiers.
//! Throws ConfigError unless specs name each of the five tiers exactly once.
NetworkLayout build_layout(std::span<const TierSpec> specs,
                           const SimArea& area,
                           Xoshiro256& rng);

//! CSV with header tier,x_m,y_m,z_m.
void write_layout_csv(std::ostream& os, const NetworkLayout& layout);

}  // namespace aghetnet
