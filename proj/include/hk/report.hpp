#pragma once

// CSV and JSON emission. Timings never appear in the main objects; they
// sit under a separate "timings" key so outputs compare byte-for-byte.

#include <string>

#include <json.hpp>

#include "hk/diagonalize.hpp"
#include "hk/hk.hpp"
#include "hk/reduce.hpp"

namespace hk {

using Json = nlohmann::ordered_json;

// Header "e,q,colength,f_e,exact".
std::string report_csv(const HKReport& r);
std::string format_fe(double v);

Json to_json(const HKReport& r, bool timings = false);
Json to_json(const FamilyScanResult& r, bool timings = false);
// Rows "alpha,e,q,colength,le_base".
std::string family_csv(const FamilyScanResult& r);

Json series_json(const TruncatedSeries& s);
Json to_json(const DiagonalizationCertificate& c);

Json to_json(const ReductionTrace& t);
ReductionTrace trace_from_json(const Json& j);
// Rows "step,e,q,before,after,exact,holds".
std::string audit_csv(const ReductionTrace& t);

Json to_json(const ScanReport& r);
std::string scan_csv(const ScanReport& r);

}  // namespace hk
