#pragma once

// Internal helpers shared by the translation units that speak JSON.

#include <json.hpp>

#include "atlas/election.hpp"

namespace atlas::detail {

nlohmann::json election_to_json_object(const Election& e);
Election election_from_json_object(const nlohmann::json& j);

} // namespace atlas::detail
