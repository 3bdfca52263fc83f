#pragma once

#include <nlohmann/json.hpp>

#include "buffon/stats.hpp"

namespace buffon {

nlohmann::json to_json(const Trace& trace);
nlohmann::json to_json(const MassBracket& bracket);
nlohmann::json to_json(const Summary& summary);
nlohmann::json to_json(const TailReport& report);

// Plot-ready rows: kind,index,exceedances,empirical,bound
std::string tails_csv(const TailReport& report);

// Single-row aggregate table.
std::string summary_csv(const Summary& summary);

}  // namespace buffon
