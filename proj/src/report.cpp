// SPDX-License-Identifier: Apache-2.0
#include "aghetnet/report.hpp"

#include <chrono>
#include <ctime>
#include <ostream>

namespace aghetnet
{
using nlohmann::json;

std::string utc_timestamp()
{
    const std::time_t now
        = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json result_document(const std::string& command,
                     const SimConfig& config,
                     json body,
                     const std::string& timestamp)
{
    return {{"command", command},
            {"timestamp", timestamp},
            {"config", config_to_json(config)},
            {"result", std::move(body)}};
}

json to_json(const TrialKpi& kpi)
{
    return {{"fivepse", kpi.fifth_percentile_se},
            {"coverage", kpi.coverage_probability}};
}

json to_json(const KpiReport& r)
{
    json trials = json::array();
    for (const auto& t : r.records)
    {
        trials.push_back({{"trial", t.trial},
                          {"fivepse", t.fifth_percentile_se},
                          {"coverage", t.coverage_probability},
                          {"ues", t.per_ue_se.size()}});
    }
    return {{"seed", r.seed},
            {"trials", r.trials},
            {"threshold_se", r.threshold_se},
            {"state", to_json(r.state)},
            {"fivepse", r.fifth_percentile_se},
            {"coverage", r.coverage_probability},
            {"records", std::move(trials)}};
}

json to_json(const SearchResult& r)
{
    return {{"best_state", to_json(r.best_state)},
            {"best_value", r.best_value},
            {"best_kpi", to_json(r.best_kpi)},
            {"evaluated", r.evaluated}};
}

json to_json(std::span<const SurfacePoint> surface)
{
    json rows = json::array();
    for (const auto& p : surface)
    {
        rows.push_back({{"tau_pbs", p.tau_pbs_db},
                        {"tau_uabs", p.tau_uabs_db},
                        {"coverage", p.coverage},
                        {"fivepse", p.fivepse}});
    }
    return rows;
}

void write_kpi_csv(std::ostream& os, const KpiReport& report)
{
    const auto precision = os.precision(10);
    os << "trial,kpi,value\n";
    for (const auto& t : report.records)
    {
        os << t.trial << ",5pse," << t.fifth_percentile_se << '\n';
        os << t.trial << ",coverage," << t.coverage_probability << '\n';
    }
    os.precision(precision);
}

void write_assignment_csv(std::ostream& os, const Association& association)
{
    const auto precision = os.precision(10);
    os << "ue,tier,cell,subframe,sir_db\n";
    for (const auto& a : association.assignments)
    {
        os << a.ue_index << ',' << to_string(a.serving_tier) << ',' << a.serving_cell
           << ',' << to_string(a.subframe) << ',' << linear_to_db(a.serving_sir())
           << '\n';
    }
    os.precision(precision);
}

}  // namespace aghetnet
