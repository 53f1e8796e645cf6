#pragma once

#include <string>
#include <string_view>

#include "heda/types.hpp"

namespace heda {

/// Parses a JSON config document. Absent keys keep their defaults; unknown keys
/// are rejected. Throws ParseError (with key path) or ConstraintError.
SimConfig load_config(std::string_view document);
SimConfig load_config_file(const std::string& path);

/// Serializes every field, so the output reparses to an equal config.
std::string to_json(const SimConfig& config);

inline Lambda effective_lambda(const SimConfig& config) { return config.lambda; }

RoutingPolicy parse_routing_policy(std::string_view text);
UnitKind parse_unit_kind(std::string_view text);
UnitState parse_unit_state(std::string_view text);

}  // namespace heda
