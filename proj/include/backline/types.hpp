#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "backline/geometry.hpp"

namespace backline {

enum class Team { home, away };

inline Team opponent(Team t) { return t == Team::home ? Team::away : Team::home; }
const char* to_string(Team t);
std::optional<Team> team_from_string(std::string_view s);

// Report-facing label factor: home -> "A", away -> "B".
const char* team_label(Team t);

struct PlayerState {
    std::string player_id;
    Team team = Team::home;
    Point2 position;
    Point2 velocity;
    bool is_goalkeeper = false;

    double speed() const { return norm(velocity); }
};

struct BallState {
    Point2 position;
    std::optional<std::string> carrier;
};

// One 25 Hz tracking snapshot.
struct Frame {
    std::int64_t frame_id = 0;
    std::int64_t timestamp_ms = 0;  // from period start
    int period = 1;
    BallState ball;
    std::vector<PlayerState> players;

    const PlayerState* find_player(std::string_view id) const;
};

enum class EventKind {
    pass,
    carry,
    tackle,
    interception,
    duel,
    pressure,
    shot,
    goal,
    clearance,
    foul,
    offside,
    throw_in,
    substitution,
    other_restart,
    other,
};

const char* to_string(EventKind k);
// Unknown strings map to EventKind::other; `known` reports whether the
// string was recognized.
EventKind event_kind_from_string(std::string_view s, bool* known = nullptr);

enum class EventOutcome { complete, incomplete, won, lost };
const char* to_string(EventOutcome o);
std::optional<EventOutcome> outcome_from_string(std::string_view s);

struct MatchEvent {
    std::string event_id;
    std::int64_t timestamp_ms = 0;
    int period = 1;
    EventKind kind = EventKind::other;
    Team team = Team::home;
    std::string player_id;
    std::optional<Point2> location;
    std::optional<EventOutcome> outcome;

    // Restarts never open a turnover and invalidate sequences they land in.
    bool is_restart() const;
    // Ball-at-foot actions with meaningful ball colocation, used for sync
    // scoring and offset estimation.
    bool is_on_ball() const;
    // Whether this event moves the on-ball possession to `team`. Duels only
    // count when won; tackles marked lost do not.
    bool updates_possession() const;
};

// Reflect a frame into canonical orientation for the losing (defending)
// team: its own goal line at x = 0, attacking toward +x. The flag states
// the team's current attacking direction in the input coordinates;
// nullopt means the direction metadata is missing.
Frame normalize_orientation(const Frame& frame,
                            std::optional<bool> losing_team_attacks_right,
                            const Pitch& pitch);

// Attack direction from goalkeeper placement: a team attacks toward +x
// when its keeper sits in the low-x half. nullopt when the team has no
// tracked keeper in that period.
std::optional<bool> infer_attack_direction(const std::vector<Frame>& frames,
                                           Team team, int period, const Pitch& pitch);

}  // namespace backline
