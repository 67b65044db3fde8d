// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "aghetnet/config.hpp"
#include "aghetnet/report.hpp"

using namespace aghetnet;

namespace
{
std::string error_of(std::string_view text)
{
    try
    {
        config_from_string(text);
    }
    catch (const ConfigError& e)
    {
        return e.what();
    }
    return {};
}

bool contains(const std::string& s, std::string_view part)
{
    return s.find(part) != std::string::npos;
}
}  // namespace

TEST_CASE("an empty configuration gives the reference defaults")
{
    for (std::string_view text : {"", "  \n", "{}"})
    {
        const auto c = config_from_string(text);
        CHECK_FALSE(c.seed);
        CHECK(c.trials == 10);
        CHECK(c.uabs_height_m == 36);
        CHECK(c.scenario.area.width_m == 10000);
        CHECK(c.scenario.area.height_m == 10000);
        CHECK(c.scenario.tier(Tier::Mbs).intensity_per_km2 == 4);
        CHECK(c.scenario.tier(Tier::Pbs).intensity_per_km2 == 12);
        CHECK(c.scenario.tier(Tier::Gue).intensity_per_km2 == 100);
        CHECK(c.scenario.tier(Tier::Aue).intensity_per_km2 == 1.8);
        CHECK(c.scenario.tier(Tier::Uabs).count == 60);
        CHECK(c.scenario.tier(Tier::Mbs).tx_power_dbm == 46);
        CHECK(c.scenario.tier(Tier::Pbs).tx_power_dbm == 30);
        CHECK(c.scenario.tier(Tier::Uabs).tx_power_dbm == 26);
        CHECK(c.scenario.tier(Tier::Uabs).height_m == 36);
        CHECK(c.scenario.channel.carrier_mhz == 763);
        CHECK(c.scenario.threshold_se == 0.01);
        CHECK(c.icic == IcicMode::Custom);
        CHECK(c.state == IcicState{});
        CHECK(c.grid == SearchGrid{});
        CHECK(c == SimConfig{});
    }
}

TEST_CASE("a missing seed is an error only when a run needs it")
{
    const auto c = config_from_string("{}");
    CHECK_THROWS_AS(c.require_seed(), ConfigError);
    CHECK(config_from_string(R"({"seed": 42})").require_seed() == 42);
    CHECK(contains(error_of(R"({"seed": -1})"), "seed"));
}

TEST_CASE("out-of-range parameters name the field and the range")
{
    const auto e = error_of(R"({"state": {"tau_pbs_db": 20}})");
    CHECK(contains(e, "state.tau_pbs_db = 20 is outside the documented range [0, 12] dB"));
    CHECK(contains(error_of(R"({"state": {"rho_mbs_db": 10}})"), "state.rho_mbs_db"));
    CHECK(contains(error_of(R"({"grid": {"alpha": [0, 1.5]}})"), "grid.alpha"));
    CHECK(contains(error_of(R"({"grid": {"tau_uabs_db": []}})"), "grid.tau_uabs_db must not be empty"));
    CHECK(contains(error_of(R"({"uabs_height_m": 40})"), "uabs_height_m = 40"));
    CHECK(contains(error_of(R"({"trials": 0})"), "trials"));
}

TEST_CASE("unknown fields and bad types are rejected")
{
    CHECK(contains(error_of(R"({"sede": 1})"), "unknown field 'sede'"));
    CHECK(contains(error_of(R"({"tiers": {"mbs": {"power": 40}}})"), "tiers.mbs.power"));
    CHECK(contains(error_of(R"({"trials": "many"})"), "trials"));
    CHECK(contains(error_of(R"({"channel": {"los_mode": "coin"}})"), "coin"));
    CHECK(contains(error_of(R"({"icic": "abs"})"), "abs"));
    CHECK(contains(error_of(R"({"tiers": {"uabs": {"height_m": 50}}})"), "uabs_height_m"));
    CHECK(contains(error_of("[1, 2]"), "object"));
}

TEST_CASE("parse errors carry the origin and position")
{
    const auto e = error_of("{\n  \"seed\": 1,\n  \"trials\": 2\n,}");
    CHECK(contains(e, "<config>"));
    CHECK(contains(e, "line 4"));
}

TEST_CASE("round trip through JSON")
{
    const auto text = R"({
        "seed": 7, "trials": 3, "uabs_height_m": 50,
        "area": {"width_m": 2000, "height_m": 3000},
        "tiers": {"pbs": {"intensity_per_km2": 20, "tx_power_dbm": 27},
                  "uabs": {"placement": "hex", "count": 6}},
        "channel": {"los_mode": "bernoulli", "fading": false, "antenna": {"downtilt_deg": 4}},
        "model": {"scheduling": "serving-sir", "csf_alignment": "nearest", "uabs_duty": "as-written"},
        "coverage": {"threshold_se": 0.05, "probe_resolution_m": 100},
        "icic": "feicic", "objective": "coverage",
        "state": {"alpha_mbs": 0.5, "tau_pbs_db": 6},
        "grid": {"alpha": [0.25, 0.5], "alpha_pbs": [], "tau_uabs_db": [0, 12]},
        "out": "result.json"
    })";
    const auto c = config_from_string(text);
    CHECK(c.seed == 7u);
    CHECK(c.scenario.tier(Tier::Uabs).height_m == 50);
    CHECK(c.scenario.tier(Tier::Pbs).tx_power_dbm == 27);
    CHECK(c.scenario.channel.antenna.downtilt_deg == 4);
    CHECK(c.scenario.scheduling == SchedulingRule::ServingSir);
    CHECK(c.scenario.sir.alignment == CsfAlignment::NearestCells);
    CHECK(c.scenario.uabs_duty == UabsDutyNormalization::AsWritten);
    CHECK(c.grid.objective == Objective::Coverage);
    CHECK(c.grid.alpha_pbs_values.empty());
    CHECK(c.state.tau_pbs_db == 6);

    const auto back = config_from_json(config_to_json(c));
    CHECK(back == c);
    CHECK(config_from_json(config_to_json(SimConfig{})) == SimConfig{});
}

TEST_CASE("load from a file")
{
    const auto path = std::filesystem::temp_directory_path() / "aghetnet_test_config.json";
    {
        std::ofstream os(path);
        os << R"({"seed": 3, "trials": 2})";
    }
    const auto c = load_config(path);
    CHECK(c.seed == 3u);
    CHECK(c.trials == 2);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_config(path), ConfigError);
}

TEST_CASE("height override keeps the tier in step")
{
    SimConfig c;
    c.set_uabs_height(50);
    CHECK(c.scenario.tier(Tier::Uabs).height_m == 50);
    CHECK_NOTHROW(c.validate());
    c.uabs_height_m = 36;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("result document")
{
    SimConfig c;
    c.seed = 1;
    const auto doc = result_document("simulate", c, nlohmann::json{{"x", 1}}, "2026-01-01T00:00:00Z");
    CHECK(doc["command"] == "simulate");
    CHECK(doc["timestamp"] == "2026-01-01T00:00:00Z");
    CHECK(doc["config"]["seed"] == 1);
    CHECK(doc["result"]["x"] == 1);
    CHECK(config_from_json(doc["config"]) == c);
}
