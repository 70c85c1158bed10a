#pragma once

#include "polyent/states.hpp"

#include <string>
#include <vector>

namespace polyent {

/// State file format: {"kind": "pure"|"mixed", "dims": [...],
/// "data": [[re, im], ...]} with matrices flattened row-major. An optional
/// "labels" array names the subsystems.
///
/// Parsing errors and invariant violations throw DimensionError or
/// DomainError; malformed JSON throws DomainError.
MultipartiteState parse_state(const std::string& text);
std::vector<MultipartiteState> parse_state_list(const std::string& text);

/// Compact JSON with shortest round-trip doubles; identical input gives
/// identical bytes.
std::string format_state(const MultipartiteState& state);
std::string format_state_list(const std::vector<MultipartiteState>& states);

}  // namespace polyent
