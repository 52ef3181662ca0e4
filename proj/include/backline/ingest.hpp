#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "backline/types.hpp"

namespace backline {

struct ReadReport {
    struct Reject {
        std::size_t line_no = 0;  // 1-based
        std::string reason;
    };

    std::size_t total_lines = 0;  // nonempty lines seen
    std::vector<Reject> rejects;
    std::vector<std::string> warnings;
};

// JSONL readers. Output is sorted (period, frame_id) / (period, timestamp_ms).
// Malformed lines land in the report; more than 5% rejected raises
// CorruptInputError, an unreadable path raises MissingInputError.
std::vector<Frame> read_tracking(const std::string& path, ReadReport* report = nullptr);
std::vector<MatchEvent> read_events(const std::string& path, ReadReport* report = nullptr);

// Single-line parsers, exposed for fuzzing; never throw on bad input.
std::optional<Frame> parse_tracking_line(const std::string& line, std::string* error,
                                         std::vector<std::string>* warnings = nullptr);
std::optional<MatchEvent> parse_event_line(const std::string& line, std::string* error,
                                           std::vector<std::string>* warnings = nullptr);

// Canonical JSONL emission; read(write(x)) is identity and write(read(f))
// is byte-identical for files produced here.
std::string to_json_line(const Frame& frame);
std::string to_json_line(const MatchEvent& event);
void write_tracking(const std::string& path, const std::vector<Frame>& frames);
void write_events(const std::string& path, const std::vector<MatchEvent>& events);

struct ValidationSummary {
    struct PeriodStats {
        std::size_t frames = 0;
        std::size_t events = 0;
        std::size_t rate_gaps = 0;  // consecutive timestamps off 40 ms by > 1 ms
    };

    std::map<int, PeriodStats> periods;
    std::map<std::size_t, std::size_t> players_per_frame;
    std::size_t implausible_speed_players = 0;
    bool excluded = false;  // some period has events but no tracking
    std::vector<std::string> notes;
};

ValidationSummary validate_match(const std::vector<Frame>& frames,
                                 const std::vector<MatchEvent>& events);

// Nearest in-possession player within `max_distance_m` of the ball, used
// when the provider omits the carrier.
std::optional<std::string> infer_carrier(const Frame& frame, Team possession_team,
                                         double max_distance_m = 2.0);

}  // namespace backline
