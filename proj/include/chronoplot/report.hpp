#pragma once

#include <chronoplot/time_series.hpp>

#include <json.hpp>

#include <string>

namespace chronoplot {

// Stable machine-readable form:
//
//   {"valid": bool, "granularity": str, "tz": str,
//    "duplicates": [{"key": [str], "index": str, "index_value": int,
//                    "rows": [int], "lines": [int]}],
//    "gaps": [{"key": [str], "from": str, "to": str,
//              "first_index": int, "last_index": int, "count": int}]}
//
// `rows` are 1-based data rows; `lines` are source lines (0 when unknown).
nlohmann::json report_to_json(const ValidationReport& report, const TimeSeries& ts);

// One line per finding; empty when the report is clean.
std::string report_to_text(const ValidationReport& report, const TimeSeries& ts);

} // namespace chronoplot
