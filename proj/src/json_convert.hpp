#pragma once

// Internal JSON (de)serialization shared by the io translation units.
// Field names here are the wire schema; keep them in sync with the
// schemas/ directory.

#include <json.hpp>

#include "backline/sync.hpp"
#include "backline/transitions.hpp"
#include "backline/types.hpp"

namespace backline::detail {

using json = nlohmann::json;

json frame_to_json(const Frame& frame);
json event_to_json(const MatchEvent& event);
json synced_to_json(const SyncedEvent& synced);
json sequence_to_json(const TransitionSequence& seq);

// Parsers throw ValidationError with a field-level reason on bad shape.
Frame frame_from_json(const json& j, std::vector<std::string>* warnings = nullptr);
MatchEvent event_from_json(const json& j, std::vector<std::string>* warnings = nullptr);
SyncedEvent synced_from_json(const json& j);
TransitionSequence sequence_from_json(const json& j);

// Strict field accessors.
const json& require(const json& j, const char* key);
double require_finite(const json& j, const char* key);
std::int64_t require_int(const json& j, const char* key);
std::string require_string(const json& j, const char* key);

}  // namespace backline::detail
