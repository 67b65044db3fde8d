// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/types.hpp
//! Shared value types, tier enumeration, unit conversions and error classes.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aghetnet
{
//! 3D position in meters. z is the antenna height above ground.
struct Position
{
    double x{0};
    double y{0};
    double z{0};

    friend bool operator==(const Position&, const Position&) = default;
};

//! Base-station tiers first, then the two user tiers.
enum class Tier
{
    Mbs,
    Pbs,
    Uabs,
    Gue,
    Aue
};

inline constexpr bool is_base_station(Tier t)
{
    return t == Tier::Mbs || t == Tier::Pbs || t == Tier::Uabs;
}

enum class Subframe
{
    Usf,
    Csf
};

std::string_view to_string(Tier tier);
std::optional<Tier> tier_from_string(std::string_view name);
std::string_view to_string(Subframe sf);

//! Invalid numerical argument (negative intensity, m < 0.5, ...).
class ParameterError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Inconsistent or out-of-range configuration.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! A link whose endpoints do not form one of the modeled classes.
class ClassificationError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

inline double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

inline double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

}  // namespace aghetnet
