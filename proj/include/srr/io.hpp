#pragma once

#include "srr/codebook.hpp"
#include "srr/combin.hpp"
#include "srr/metrics.hpp"
#include "srr/recovery.hpp"
#include "srr/region.hpp"
#include "srr/simq.hpp"
#include "srr/waterfill.hpp"

#include <json.hpp>

#include <string>

namespace srr::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "srr/1";

// Rationals serialize as "num/den" (integers as plain "n"); parsing also
// accepts decimal strings and JSON numbers (doubles convert exactly).
json rat_json(const Rat& r);
Rat rat_parse(const json& j);

json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const json& j);

json scheme_to_json(const StorageScheme& s);
StorageScheme scheme_from_json(const json& j);

json lrc_profile_to_json(const LrcProfile& p);
LrcProfile lrc_profile_from_json(const json& j);

// Server and object indices are 1-based on the wire.
json catalog_to_json(const RecoveryCatalog& cat);

json demand_to_json(const std::vector<Rat>& lambda);
std::vector<Rat> demand_from_json(const json& j);

json allocation_to_json(const Allocation& a);
Allocation allocation_from_json(const json& j);

json polytope_to_json(const RegionPolytope& p);
RegionPolytope polytope_from_json(const json& j);

json waterfill_to_json(const WaterfillResult& r);

json graph_to_json(const RecoveryHypergraph& g);

json distribution_to_json(const DemandDistribution& d);
DemandDistribution distribution_from_json(const json& j);

json sim_report_to_json(const SimReport& r);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace srr::io
