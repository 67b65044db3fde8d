// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/config.hpp
//! JSON run configuration: loading with defaults, validation, and the
//! effective-config echo written into result files.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "aghetnet/optimizer.hpp"

namespace aghetnet
{
//! Documented parameter ranges; states and grid values outside are rejected.
struct ParameterRange
{
    double lo;
    double hi;
    const char* unit;
};

inline constexpr ParameterRange kTauRange{0, 12, "dB"};
inline constexpr ParameterRange kRhoMbsRange{20, 40, "dB"};
inline constexpr ParameterRange kRhoPbsRange{-10, 10, "dB"};
inline constexpr ParameterRange kRhoUabsRange{-5, 5, "dB"};
inline constexpr ParameterRange kUnitRange{0, 1, ""};

struct SimConfig
{
    std::optional<std::uint64_t> seed;  //!< no wall-clock fallback
    std::size_t trials{10};
    double uabs_height_m{36};  //!< 36 or 50
    Scenario scenario{Scenario::reference(36)};
    IcicMode icic{IcicMode::Custom};  //!< Custom: state and grid as given
    IcicState state;                  //!< used by single-state runs
    SearchGrid grid;
    std::string out;  //!< result path; empty writes to stdout

    //! Throws ConfigError when no seed was given.
    std::uint64_t require_seed() const;
    //! Sets the UABS height scenario and the UABS tier height together.
    void set_uabs_height(double h);
    //! Range and consistency checks; throws ConfigError naming the field.
    void validate() const;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

//! Absent fields keep their defaults; unknown fields are errors.
SimConfig config_from_json(const nlohmann::json& j);
//! Empty or whitespace-only text is the empty object. Parse errors carry
//! line and column.
SimConfig config_from_string(std::string_view text, std::string_view origin = "<config>");
SimConfig load_config(const std::filesystem::path& path);

//! Every field, suitable for config_from_json.
nlohmann::json config_to_json(const SimConfig& c);
nlohmann::json to_json(const IcicState& s);

}  // namespace aghetnet
