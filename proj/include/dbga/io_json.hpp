#pragma once

#include "dbga/verify.hpp"

#include <json.hpp>

namespace dbga {

using json = nlohmann::json;

json window_to_json(const Window& w);
json table_to_json(const BidegreeTable& t);
json report_to_json(const CheckReport& r);
json orbit_result_to_json(const OrbitHomResult& r);
json cluster_to_json(const ClusterTable& t);
json pairs_to_json(const PairsReport& r);

// csv / markdown renderings of a dimension table
std::string table_to_csv(const BidegreeTable& t);
std::string table_to_markdown(const BidegreeTable& t);

// Serialized with sorted keys and a stable layout; identical inputs produce
// byte-identical output.
std::string dump_payload(const json& j);
// Comparison payload with volatile fields (runtime_ms) removed.
json strip_runtime(json j);

}  // namespace dbga
