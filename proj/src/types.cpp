#include "backline/types.hpp"

#include <array>
#include <utility>

namespace backline {

const char* to_string(Team t) { return t == Team::home ? "home" : "away"; }

std::optional<Team> team_from_string(std::string_view s) {
    if (s == "home") return Team::home;
    if (s == "away") return Team::away;
    return std::nullopt;
}

const char* team_label(Team t) { return t == Team::home ? "A" : "B"; }

const PlayerState* Frame::find_player(std::string_view id) const {
    for (const auto& p : players) {
        if (p.player_id == id) return &p;
    }
    return nullptr;
}

namespace {

constexpr std::pair<EventKind, const char*> kKindNames[] = {
    {EventKind::pass, "pass"},
    {EventKind::carry, "carry"},
    {EventKind::tackle, "tackle"},
    {EventKind::interception, "interception"},
    {EventKind::duel, "duel"},
    {EventKind::pressure, "pressure"},
    {EventKind::shot, "shot"},
    {EventKind::goal, "goal"},
    {EventKind::clearance, "clearance"},
    {EventKind::foul, "foul"},
    {EventKind::offside, "offside"},
    {EventKind::throw_in, "throw_in"},
    {EventKind::substitution, "substitution"},
    {EventKind::other_restart, "other_restart"},
    {EventKind::other, "other"},
};

}  // namespace

const char* to_string(EventKind k) {
    for (const auto& [kind, name] : kKindNames) {
        if (kind == k) return name;
    }
    return "other";
}

EventKind event_kind_from_string(std::string_view s, bool* known) {
    for (const auto& [kind, name] : kKindNames) {
        if (s == name) {
            if (known) *known = true;
            return kind;
        }
    }
    if (known) *known = false;
    return EventKind::other;
}

const char* to_string(EventOutcome o) {
    switch (o) {
        case EventOutcome::complete: return "complete";
        case EventOutcome::incomplete: return "incomplete";
        case EventOutcome::won: return "won";
        case EventOutcome::lost: return "lost";
    }
    return "complete";
}

std::optional<EventOutcome> outcome_from_string(std::string_view s) {
    if (s == "complete") return EventOutcome::complete;
    if (s == "incomplete") return EventOutcome::incomplete;
    if (s == "won") return EventOutcome::won;
    if (s == "lost") return EventOutcome::lost;
    return std::nullopt;
}

bool MatchEvent::is_restart() const {
    return kind == EventKind::throw_in || kind == EventKind::offside ||
           kind == EventKind::foul || kind == EventKind::other_restart;
}

bool MatchEvent::is_on_ball() const {
    switch (kind) {
        case EventKind::pass:
        case EventKind::carry:
        case EventKind::tackle:
        case EventKind::interception:
        case EventKind::duel:
        case EventKind::shot:
        case EventKind::goal:
        case EventKind::clearance:
            return true;
        default:
            return false;
    }
}

bool MatchEvent::updates_possession() const {
    switch (kind) {
        case EventKind::pass:
        case EventKind::carry:
        case EventKind::interception:
        case EventKind::shot:
        case EventKind::goal:
        case EventKind::clearance:
        case EventKind::throw_in:
        case EventKind::other_restart:
            return true;
        case EventKind::tackle:
            return !(outcome && *outcome == EventOutcome::lost);
        case EventKind::duel:
            return outcome && *outcome == EventOutcome::won;
        default:
            return false;
    }
}

Frame normalize_orientation(const Frame& frame,
                            std::optional<bool> losing_team_attacks_right,
                            const Pitch& pitch) {
    if (!losing_team_attacks_right) {
        throw OrientationUnknownError("normalize_orientation: attack direction unknown for frame " +
                                      std::to_string(frame.frame_id));
    }
    if (*losing_team_attacks_right) return frame;

    Frame out = frame;
    out.ball.position = pitch.reflect(out.ball.position);
    for (auto& p : out.players) {
        p.position = pitch.reflect(p.position);
        p.velocity = {-p.velocity.x, -p.velocity.y};
    }
    return out;
}

std::optional<bool> infer_attack_direction(const std::vector<Frame>& frames,
                                           Team team, int period, const Pitch& pitch) {
    double sum_x = 0.0;
    std::size_t n = 0;
    for (const auto& f : frames) {
        if (f.period != period) continue;
        for (const auto& p : f.players) {
            if (p.team == team && p.is_goalkeeper) {
                sum_x += p.position.x;
                ++n;
            }
        }
    }
    if (n == 0) return std::nullopt;
    return (sum_x / static_cast<double>(n)) < pitch.length / 2.0;
}

}  // namespace backline
