#include "json_convert.hpp"

#include <cmath>

#include "backline/errors.hpp"

namespace backline::detail {

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(std::string("missing field: ") + key);
    return *it;
}

double require_finite(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number()) throw ValidationError(std::string("not a number: ") + key);
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ValidationError(std::string("non-finite value: ") + key);
    return d;
}

std::int64_t require_int(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_number_integer()) throw ValidationError(std::string("not an integer: ") + key);
    return v.get<std::int64_t>();
}

std::string require_string(const json& j, const char* key) {
    const json& v = require(j, key);
    if (!v.is_string()) throw ValidationError(std::string("not a string: ") + key);
    return v.get<std::string>();
}

namespace {

Team parse_team(const json& j, const char* key) {
    auto t = team_from_string(require_string(j, key));
    if (!t) throw ValidationError(std::string("invalid team: ") + key);
    return *t;
}

int parse_period(const json& j) {
    auto p = require_int(j, "period");
    if (p != 1 && p != 2) throw ValidationError("period must be 1 or 2");
    return static_cast<int>(p);
}

}  // namespace

json frame_to_json(const Frame& frame) {
    json ball{{"x", frame.ball.position.x}, {"y", frame.ball.position.y}};
    ball["carrier"] = frame.ball.carrier ? json(*frame.ball.carrier) : json(nullptr);

    json players = json::array();
    for (const auto& p : frame.players) {
        players.push_back({{"id", p.player_id},
                           {"team", to_string(p.team)},
                           {"x", p.position.x},
                           {"y", p.position.y},
                           {"vx", p.velocity.x},
                           {"vy", p.velocity.y},
                           {"gk", p.is_goalkeeper}});
    }
    return json{{"frame_id", frame.frame_id},
                {"period", frame.period},
                {"timestamp_ms", frame.timestamp_ms},
                {"ball", std::move(ball)},
                {"players", std::move(players)}};
}

Frame frame_from_json(const json& j, std::vector<std::string>* warnings) {
    if (!j.is_object()) throw ValidationError("frame line is not an object");
    Frame frame;
    frame.frame_id = require_int(j, "frame_id");
    frame.period = parse_period(j);
    frame.timestamp_ms = require_int(j, "timestamp_ms");

    const json& ball = require(j, "ball");
    if (!ball.is_object()) throw ValidationError("ball is not an object");
    frame.ball.position = {require_finite(ball, "x"), require_finite(ball, "y")};
    const json& carrier = require(ball, "carrier");
    if (carrier.is_string()) {
        frame.ball.carrier = carrier.get<std::string>();
    } else if (!carrier.is_null()) {
        throw ValidationError("carrier must be string or null");
    }

    const json& players = require(j, "players");
    if (!players.is_array()) throw ValidationError("players is not an array");
    frame.players.reserve(players.size());
    for (const auto& pj : players) {
        if (!pj.is_object()) throw ValidationError("player entry is not an object");
        PlayerState p;
        p.player_id = require_string(pj, "id");
        p.team = parse_team(pj, "team");
        p.position = {require_finite(pj, "x"), require_finite(pj, "y")};
        p.velocity = {require_finite(pj, "vx"), require_finite(pj, "vy")};
        const json& gk = require(pj, "gk");
        if (!gk.is_boolean()) throw ValidationError("gk must be boolean");
        p.is_goalkeeper = gk.get<bool>();
        for (const auto& existing : frame.players) {
            if (existing.player_id == p.player_id) {
                throw ValidationError("duplicate player id in frame: " + p.player_id);
            }
        }
        if (warnings && p.speed() > 13.0) {
            warnings->push_back("implausible speed for player " + p.player_id + " in frame " +
                                std::to_string(frame.frame_id));
        }
        frame.players.push_back(std::move(p));
    }
    return frame;
}

json event_to_json(const MatchEvent& e) {
    json j{{"event_id", e.event_id},
           {"period", e.period},
           {"timestamp_ms", e.timestamp_ms},
           {"kind", to_string(e.kind)},
           {"team", to_string(e.team)},
           {"player", e.player_id}};
    j["x"] = e.location ? json(e.location->x) : json(nullptr);
    j["y"] = e.location ? json(e.location->y) : json(nullptr);
    j["outcome"] = e.outcome ? json(to_string(*e.outcome)) : json(nullptr);
    return j;
}

MatchEvent event_from_json(const json& j, std::vector<std::string>* warnings) {
    if (!j.is_object()) throw ValidationError("event line is not an object");
    MatchEvent e;
    e.event_id = require_string(j, "event_id");
    e.period = parse_period(j);
    e.timestamp_ms = require_int(j, "timestamp_ms");

    bool known = false;
    std::string kind = require_string(j, "kind");
    e.kind = event_kind_from_string(kind, &known);
    if (!known && warnings) {
        warnings->push_back("unknown event kind '" + kind + "' mapped to other (event " +
                            e.event_id + ")");
    }

    e.team = parse_team(j, "team");
    e.player_id = require_string(j, "player");

    const json& x = require(j, "x");
    const json& y = require(j, "y");
    if (x.is_null() != y.is_null()) throw ValidationError("location must set both x and y or neither");
    if (!x.is_null()) {
        e.location = Point2{require_finite(j, "x"), require_finite(j, "y")};
    }

    const json& outcome = require(j, "outcome");
    if (outcome.is_string()) {
        auto o = outcome_from_string(outcome.get<std::string>());
        if (!o) {
            if (warnings) {
                warnings->push_back("unknown outcome '" + outcome.get<std::string>() +
                                    "' dropped (event " + e.event_id + ")");
            }
        } else {
            e.outcome = o;
        }
    } else if (!outcome.is_null()) {
        throw ValidationError("outcome must be string or null");
    }
    return e;
}

json synced_to_json(const SyncedEvent& s) {
    return json{{"event", event_to_json(s.event)},
                {"frame_id", s.frame_id},
                {"sync_score", s.sync_score},
                {"window", json::array({s.window.first, s.window.second})}};
}

SyncedEvent synced_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("synced line is not an object");
    SyncedEvent s;
    s.event = event_from_json(require(j, "event"));
    s.frame_id = require_int(j, "frame_id");
    s.sync_score = require_finite(j, "sync_score");
    const json& w = require(j, "window");
    if (!w.is_array() || w.size() != 2) throw ValidationError("window must be a 2-array");
    s.window = {w[0].get<std::int64_t>(), w[1].get<std::int64_t>()};
    return s;
}

json sequence_to_json(const TransitionSequence& seq) {
    json events = json::array();
    for (const auto& e : seq.events) events.push_back(synced_to_json(e));
    json frames = json::array();
    for (const auto& f : seq.frames) frames.push_back(frame_to_json(f));
    json back_four = json::array();
    for (const auto& bf : seq.back_four) back_four.push_back(json::array({bf[0], bf[1], bf[2], bf[3]}));

    return json{{"seq_id", seq.seq_id},
                {"losing_team", to_string(seq.losing_team)},
                {"team_label", team_label(seq.losing_team)},
                {"label", seq.label.value},
                {"label_reason", to_string(seq.label.reason)},
                {"turnover_ball_x", seq.turnover_ball_x},
                {"turnover_event", synced_to_json(seq.turnover_event)},
                {"events", std::move(events)},
                {"frames", std::move(frames)},
                {"back_four", std::move(back_four)}};
}

TransitionSequence sequence_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("sequence line is not an object");
    TransitionSequence seq;
    seq.seq_id = require_string(j, "seq_id");
    auto team = team_from_string(require_string(j, "losing_team"));
    if (!team) throw ValidationError("invalid losing_team");
    seq.losing_team = *team;
    seq.label.value = static_cast<int>(require_int(j, "label"));
    std::string reason = require_string(j, "label_reason");
    if (reason == "penalty_area_entry") seq.label.reason = OutcomeLabel::Reason::penalty_area_entry;
    else if (reason == "shot") seq.label.reason = OutcomeLabel::Reason::shot;
    else if (reason == "goal") seq.label.reason = OutcomeLabel::Reason::goal;
    else if (reason == "none") seq.label.reason = OutcomeLabel::Reason::none;
    else throw ValidationError("invalid label_reason: " + reason);
    seq.turnover_ball_x = require_finite(j, "turnover_ball_x");
    seq.turnover_event = synced_from_json(require(j, "turnover_event"));
    for (const auto& ej : require(j, "events")) seq.events.push_back(synced_from_json(ej));
    for (const auto& fj : require(j, "frames")) seq.frames.push_back(frame_from_json(fj));
    const json& bf = require(j, "back_four");
    if (!bf.is_array() || bf.size() != seq.frames.size()) {
        throw ValidationError("back_four must parallel frames");
    }
    for (const auto& ids : bf) {
        if (!ids.is_array() || ids.size() != 4) throw ValidationError("back_four entry must have 4 ids");
        seq.back_four.push_back({ids[0].get<std::string>(), ids[1].get<std::string>(),
                                 ids[2].get<std::string>(), ids[3].get<std::string>()});
    }
    return seq;
}

}  // namespace backline::detail
