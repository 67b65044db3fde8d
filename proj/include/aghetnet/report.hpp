// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/report.hpp
//! Result documents (JSON) and flat CSV exports.
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "aghetnet/config.hpp"

namespace aghetnet
{
//! Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

//! {"command", "timestamp", "config": effective config, "result": body}.
//! Only the timestamp depends on anything but the inputs.
nlohmann::json result_document(const std::string& command,
                               const SimConfig& config,
                               nlohmann::json body,
                               const std::string& timestamp);

//! Aggregates plus per-trial KPI records; per-UE SE is left to the CSVs.
nlohmann::json to_json(const KpiReport& report);
nlohmann::json to_json(const TrialKpi& kpi);
nlohmann::json to_json(const SearchResult& result);
nlohmann::json to_json(std::span<const SurfacePoint> surface);

//! trial,kpi,value with kpi in {5pse, coverage}.
void write_kpi_csv(std::ostream& os, const KpiReport& report);

//! ue,tier,cell,subframe,sir_db of every UE; tier is the serving tier.
void write_assignment_csv(std::ostream& os, const Association& association);

}  // namespace aghetnet
