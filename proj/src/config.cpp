// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace aghetnet
{
namespace
{
using nlohmann::json;

std::string fmt_num(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

void check_range(double v, const ParameterRange& r, const std::string& field)
{
    if (!(v >= r.lo && v <= r.hi))
    {
        std::string unit = *r.unit ? std::string(" ") + r.unit : std::string();
        throw ConfigError(field + " = " + fmt_num(v) + " is outside the documented range ["
                          + fmt_num(r.lo) + ", " + fmt_num(r.hi) + "]" + unit);
    }
}

//! Reads the fields of one JSON object and rejects the ones nobody asked for.
class Fields
{
  public:
    Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path))
    {
        if (!obj_.is_object())
        {
            throw ConfigError(label() + " must be an object");
        }
    }

    std::string field(const std::string& key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    const json* find(const std::string& key)
    {
        auto it = obj_.find(key);
        if (it == obj_.end())
        {
            return nullptr;
        }
        seen_.insert(key);
        return &*it;
    }

    void get(const std::string& key, double& out)
    {
        if (const json* v = find(key))
        {
            if (!v->is_number())
            {
                throw ConfigError(field(key) + " must be a number");
            }
            out = v->get<double>();
        }
    }

    void get(const std::string& key, int& out)
    {
        if (const json* v = find(key))
        {
            if (!v->is_number_integer())
            {
                throw ConfigError(field(key) + " must be an integer");
            }
            out = v->get<int>();
        }
    }

    void get(const std::string& key, std::size_t& out)
    {
        if (const json* v = find(key))
        {
            if (!v->is_number_unsigned())
            {
                throw ConfigError(field(key) + " must be a non-negative integer");
            }
            out = v->get<std::size_t>();
        }
    }

    void get(const std::string& key, bool& out)
    {
        if (const json* v = find(key))
        {
            if (!v->is_boolean())
            {
                throw ConfigError(field(key) + " must be true or false");
            }
            out = v->get<bool>();
        }
    }

    void get(const std::string& key, std::string& out)
    {
        if (const json* v = find(key))
        {
            if (!v->is_string())
            {
                throw ConfigError(field(key) + " must be a string");
            }
            out = v->get<std::string>();
        }
    }

    void get(const std::string& key, std::vector<double>& out)
    {
        if (const json* v = find(key))
        {
            if (!v->is_array())
            {
                throw ConfigError(field(key) + " must be an array of numbers");
            }
            std::vector<double> values;
            for (const auto& e : *v)
            {
                if (!e.is_number())
                {
                    throw ConfigError(field(key) + " must be an array of numbers");
                }
                values.push_back(e.get<double>());
            }
            out = std::move(values);
        }
    }

    //! String field mapped through parse, which throws on unknown names.
    template<class T, class Parse>
    void get_enum(const std::string& key, T& out, Parse parse)
    {
        std::string s;
        if (find(key))
        {
            get(key, s);
            try
            {
                out = parse(s);
            }
            catch (const std::exception& e)
            {
                throw ConfigError(field(key) + ": " + e.what());
            }
        }
    }

    void finish() const
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
        {
            if (!seen_.count(it.key()))
            {
                throw ConfigError("unknown field '" + field(it.key()) + "'");
            }
        }
    }

  private:
    std::string label() const { return path_.empty() ? "configuration" : path_; }

    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

const char* to_string(Placement p)
{
    return p == Placement::HexGrid ? "hex" : "ppp";
}

Placement placement_from_string(const std::string& s)
{
    if (s == "ppp")
    {
        return Placement::Ppp;
    }
    if (s == "hex")
    {
        return Placement::HexGrid;
    }
    throw ConfigError("unknown placement '" + s + "' (expected ppp|hex)");
}

const char* to_string(LosMode m)
{
    return m == LosMode::Bernoulli ? "bernoulli" : "expected";
}

LosMode los_mode_from_string(const std::string& s)
{
    if (s == "expected")
    {
        return LosMode::Expected;
    }
    if (s == "bernoulli")
    {
        return LosMode::Bernoulli;
    }
    throw ConfigError("unknown LOS mode '" + s + "' (expected expected|bernoulli)");
}

const char* to_string(UabsDutyNormalization n)
{
    return n == UabsDutyNormalization::AsWritten ? "as-written" : "half";
}

UabsDutyNormalization uabs_duty_from_string(const std::string& s)
{
    if (s == "half")
    {
        return UabsDutyNormalization::Half;
    }
    if (s == "as-written")
    {
        return UabsDutyNormalization::AsWritten;
    }
    throw ConfigError("unknown UABS duty normalization '" + s
                      + "' (expected half|as-written)");
}

IcicMode icic_from_string(const std::string& s)
{
    if (auto m = icic_mode_from_string(s))
    {
        return *m;
    }
    throw ConfigError("unknown ICIC mode '" + s + "' (expected none|eicic|feicic|custom)");
}

Objective objective_from_name(const std::string& s)
{
    if (auto o = objective_from_string(s))
    {
        return *o;
    }
    throw ConfigError("unknown objective '" + s + "' (expected 5pse|coverage)");
}

void read_antenna(const json& j, const std::string& path, AntennaParams& a)
{
    Fields f(j, path);
    f.get("g_max_dbi", a.g_max_dbi);
    f.get("theta_3db_deg", a.theta_3db_deg);
    f.get("phi_3db_deg", a.phi_3db_deg);
    f.get("sla_v_db", a.sla_v_db);
    f.get("a_max_db", a.a_max_db);
    f.get("downtilt_deg", a.downtilt_deg);
    f.finish();
}

void read_channel(const json& j, ChannelParams& c)
{
    Fields f(j, "channel");
    f.get("carrier_mhz", c.carrier_mhz);
    f.get("m_los", c.m_los);
    f.get("m_nlos", c.m_nlos);
    f.get("atg_los_a", c.atg_los_a);
    f.get("atg_los_b", c.atg_los_b);
    f.get("atg_pl_exponent_los", c.atg_pl_exponent_los);
    f.get("atg_pl_exponent_nlos", c.atg_pl_exponent_nlos);
    f.get("atg_excess_los_db", c.atg_excess_los_db);
    f.get("atg_excess_nlos_db", c.atg_excess_nlos_db);
    f.get("uabs_downtilt_deg", c.uabs_downtilt_deg);
    f.get_enum("los_mode", c.los_mode, los_mode_from_string);
    f.get("fading", c.fading);
    if (const json* a = f.find("antenna"))
    {
        read_antenna(*a, "channel.antenna", c.antenna);
    }
    f.finish();
}

void read_tiers(const json& j, Scenario& s)
{
    Fields f(j, "tiers");
    for (Tier t : {Tier::Mbs, Tier::Pbs, Tier::Uabs, Tier::Gue, Tier::Aue})
    {
        const std::string key{to_string(t)};
        const json* tj = f.find(key);
        if (!tj)
        {
            continue;
        }
        TierSpec& spec = s.tier(t);
        Fields tf(*tj, "tiers." + key);
        tf.get_enum("placement", spec.placement, placement_from_string);
        tf.get("intensity_per_km2", spec.intensity_per_km2);
        tf.get("count", spec.count);
        tf.get("tx_power_dbm", spec.tx_power_dbm);
        if (t == Tier::Uabs)
        {
            if (tf.find("height_m"))
            {
                throw ConfigError("tiers.uabs.height_m is set through uabs_height_m");
            }
        }
        else
        {
            tf.get("height_m", spec.height_m);
        }
        tf.finish();
    }
    f.finish();
}

void read_state(const json& j, IcicState& s)
{
    Fields f(j, "state");
    f.get("alpha_mbs", s.alpha_mbs);
    f.get("alpha_pbs", s.alpha_pbs);
    f.get("beta_mbs", s.beta_mbs);
    f.get("beta_pbs", s.beta_pbs);
    f.get("rho_mbs_db", s.rho_mbs_db);
    f.get("rho_pbs_db", s.rho_pbs_db);
    f.get("rho_uabs_db", s.rho_uabs_db);
    f.get("tau_pbs_db", s.tau_pbs_db);
    f.get("tau_uabs_db", s.tau_uabs_db);
    f.finish();
}

void read_grid(const json& j, SearchGrid& g)
{
    Fields f(j, "grid");
    f.get("alpha", g.alpha_values);
    f.get("alpha_pbs", g.alpha_pbs_values);
    f.get("beta", g.beta_values);
    f.get("beta_pbs", g.beta_pbs_values);
    f.get("rho_mbs_db", g.rho_mbs_values);
    f.get("rho_pbs_db", g.rho_pbs_values);
    f.get("rho_uabs_db", g.rho_uabs_values);
    f.get("tau_pbs_db", g.tau_pbs_values);
    f.get("tau_uabs_db", g.tau_uabs_values);
    f.finish();
}

void validate_state(const IcicState& s)
{
    check_range(s.alpha_mbs, kUnitRange, "state.alpha_mbs");
    check_range(s.alpha_pbs, kUnitRange, "state.alpha_pbs");
    check_range(s.beta_mbs, kUnitRange, "state.beta_mbs");
    check_range(s.beta_pbs, kUnitRange, "state.beta_pbs");
    check_range(s.rho_mbs_db, kRhoMbsRange, "state.rho_mbs_db");
    check_range(s.rho_pbs_db, kRhoPbsRange, "state.rho_pbs_db");
    check_range(s.rho_uabs_db, kRhoUabsRange, "state.rho_uabs_db");
    check_range(s.tau_pbs_db, kTauRange, "state.tau_pbs_db");
    check_range(s.tau_uabs_db, kTauRange, "state.tau_uabs_db");
}

void validate_grid(const SearchGrid& g)
{
    const std::tuple<const char*, const std::vector<double>*, ParameterRange, bool> dims[] = {
        {"grid.alpha", &g.alpha_values, kUnitRange, false},
        {"grid.alpha_pbs", &g.alpha_pbs_values, kUnitRange, true},
        {"grid.beta", &g.beta_values, kUnitRange, false},
        {"grid.beta_pbs", &g.beta_pbs_values, kUnitRange, true},
        {"grid.rho_mbs_db", &g.rho_mbs_values, kRhoMbsRange, false},
        {"grid.rho_pbs_db", &g.rho_pbs_values, kRhoPbsRange, false},
        {"grid.rho_uabs_db", &g.rho_uabs_values, kRhoUabsRange, false},
        {"grid.tau_pbs_db", &g.tau_pbs_values, kTauRange, false},
        {"grid.tau_uabs_db", &g.tau_uabs_values, kTauRange, false},
    };
    for (const auto& [name, values, range, may_be_empty] : dims)
    {
        if (values->empty() && !may_be_empty)
        {
            throw ConfigError(std::string(name) + " must not be empty");
        }
        for (double v : *values)
        {
            check_range(v, range, name);
        }
    }
}

json to_json(const AntennaParams& a)
{
    return {{"g_max_dbi", a.g_max_dbi},   {"theta_3db_deg", a.theta_3db_deg},
            {"phi_3db_deg", a.phi_3db_deg}, {"sla_v_db", a.sla_v_db},
            {"a_max_db", a.a_max_db},     {"downtilt_deg", a.downtilt_deg}};
}

json to_json(const ChannelParams& c)
{
    return {{"carrier_mhz", c.carrier_mhz},
            {"m_los", c.m_los},
            {"m_nlos", c.m_nlos},
            {"atg_los_a", c.atg_los_a},
            {"atg_los_b", c.atg_los_b},
            {"atg_pl_exponent_los", c.atg_pl_exponent_los},
            {"atg_pl_exponent_nlos", c.atg_pl_exponent_nlos},
            {"atg_excess_los_db", c.atg_excess_los_db},
            {"atg_excess_nlos_db", c.atg_excess_nlos_db},
            {"uabs_downtilt_deg", c.uabs_downtilt_deg},
            {"los_mode", to_string(c.los_mode)},
            {"fading", c.fading},
            {"antenna", to_json(c.antenna)}};
}

json to_json(const SearchGrid& g)
{
    return {{"alpha", g.alpha_values},       {"alpha_pbs", g.alpha_pbs_values},
            {"beta", g.beta_values},         {"beta_pbs", g.beta_pbs_values},
            {"rho_mbs_db", g.rho_mbs_values}, {"rho_pbs_db", g.rho_pbs_values},
            {"rho_uabs_db", g.rho_uabs_values}, {"tau_pbs_db", g.tau_pbs_values},
            {"tau_uabs_db", g.tau_uabs_values}};
}

}  // namespace

std::uint64_t SimConfig::require_seed() const
{
    if (!seed)
    {
        throw ConfigError("no seed given: set \"seed\" in the config or pass --seed");
    }
    return *seed;
}

void SimConfig::set_uabs_height(double h)
{
    uabs_height_m = h;
    scenario.tier(Tier::Uabs).height_m = h;
}

void SimConfig::validate() const
{
    if (uabs_height_m != 36.0 && uabs_height_m != 50.0)
    {
        throw ConfigError("uabs_height_m = " + fmt_num(uabs_height_m)
                          + " is not one of the height scenarios {36, 50} m");
    }
    if (trials < 1)
    {
        throw ConfigError("trials must be >= 1");
    }
    try
    {
        scenario.validate();
    }
    catch (const ParameterError& e)
    {
        throw ConfigError(e.what());
    }
    if (scenario.tier(Tier::Uabs).height_m != uabs_height_m)
    {
        throw ConfigError("UABS tier height differs from uabs_height_m");
    }
    validate_state(state);
    validate_grid(grid);
}

SimConfig config_from_json(const json& j)
{
    SimConfig c;
    Fields f(j, "");
    if (const json* v = f.find("seed"))
    {
        if (!v->is_number_unsigned())
        {
            throw ConfigError("seed must be a non-negative integer");
        }
        c.seed = v->get<std::uint64_t>();
    }
    f.get("trials", c.trials);
    double h = c.uabs_height_m;
    f.get("uabs_height_m", h);
    if (const json* v = f.find("area"))
    {
        Fields a(*v, "area");
        a.get("width_m", c.scenario.area.width_m);
        a.get("height_m", c.scenario.area.height_m);
        a.finish();
    }
    if (const json* v = f.find("tiers"))
    {
        read_tiers(*v, c.scenario);
    }
    c.set_uabs_height(h);
    if (const json* v = f.find("channel"))
    {
        read_channel(*v, c.scenario.channel);
    }
    if (const json* v = f.find("model"))
    {
        Fields m(*v, "model");
        m.get_enum("scheduling", c.scenario.scheduling, scheduling_rule_from_string);
        m.get_enum("csf_alignment", c.scenario.sir.alignment, csf_alignment_from_string);
        m.get_enum("uabs_duty", c.scenario.uabs_duty, uabs_duty_from_string);
        m.get("sir_floor_mw", c.scenario.sir.floor_mw);
        m.finish();
    }
    if (const json* v = f.find("coverage"))
    {
        Fields cv(*v, "coverage");
        cv.get("threshold_se", c.scenario.threshold_se);
        cv.get("probe_resolution_m", c.scenario.probe_resolution_m);
        cv.finish();
    }
    f.get_enum("icic", c.icic, icic_from_string);
    f.get_enum("objective", c.grid.objective, objective_from_name);
    if (const json* v = f.find("state"))
    {
        read_state(*v, c.state);
    }
    if (const json* v = f.find("grid"))
    {
        read_grid(*v, c.grid);
    }
    f.get("out", c.out);
    f.finish();
    c.validate();
    return c;
}

SimConfig config_from_string(std::string_view text, std::string_view origin)
{
    const bool blank = std::all_of(text.begin(), text.end(), [](char ch) {
        return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r';
    });
    if (blank)
    {
        return config_from_json(json::object());
    }
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError(std::string(origin) + ": " + e.what());
    }
    try
    {
        return config_from_json(j);
    }
    catch (const ConfigError& e)
    {
        throw ConfigError(std::string(origin) + ": " + e.what());
    }
}

SimConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return config_from_string(text.str(), path.string());
}

json to_json(const IcicState& s)
{
    return {{"alpha_mbs", s.alpha_mbs},     {"alpha_pbs", s.alpha_pbs},
            {"beta_mbs", s.beta_mbs},       {"beta_pbs", s.beta_pbs},
            {"rho_mbs_db", s.rho_mbs_db},   {"rho_pbs_db", s.rho_pbs_db},
            {"rho_uabs_db", s.rho_uabs_db}, {"tau_pbs_db", s.tau_pbs_db},
            {"tau_uabs_db", s.tau_uabs_db}};
}

json config_to_json(const SimConfig& c)
{
    json tiers = json::object();
    for (const auto& spec : c.scenario.tiers)
    {
        json t = {{"placement", to_string(spec.placement)},
                  {"intensity_per_km2", spec.intensity_per_km2},
                  {"count", spec.count},
                  {"tx_power_dbm", spec.tx_power_dbm}};
        if (spec.tier != Tier::Uabs)
        {
            t["height_m"] = spec.height_m;
        }
        tiers[std::string(to_string(spec.tier))] = std::move(t);
    }
    json j;
    if (c.seed)
    {
        j["seed"] = *c.seed;
    }
    j["trials"] = c.trials;
    j["uabs_height_m"] = c.uabs_height_m;
    j["area"] = {{"width_m", c.scenario.area.width_m},
                 {"height_m", c.scenario.area.height_m}};
    j["tiers"] = std::move(tiers);
    j["channel"] = to_json(c.scenario.channel);
    j["model"] = {{"scheduling", to_string(c.scenario.scheduling)},
                  {"csf_alignment", to_string(c.scenario.sir.alignment)},
                  {"uabs_duty", to_string(c.scenario.uabs_duty)},
                  {"sir_floor_mw", c.scenario.sir.floor_mw}};
    j["coverage"] = {{"threshold_se", c.scenario.threshold_se},
                     {"probe_resolution_m", c.scenario.probe_resolution_m}};
    j["icic"] = std::string(to_string(c.icic));
    j["objective"] = std::string(to_string(c.grid.objective));
    j["state"] = to_json(c.state);
    j["grid"] = to_json(c.grid);
    j["out"] = c.out;
    return j;
}

}  // namespace aghetnet
