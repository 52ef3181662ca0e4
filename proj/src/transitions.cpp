#include "backline/transitions.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "backline/errors.hpp"
#include "backline/textio.hpp"
#include "json_convert.hpp"

namespace backline {

void GateConfig::validate() const {
    if (min_turnover_x <= 0 || max_events <= 0 || pressure_lookback_ms < 0) {
        throw ConfigError("gates: thresholds must be positive");
    }
}

const char* to_string(RejectReason r) {
    switch (r) {
        case RejectReason::none: return "none";
        case RejectReason::defensive_third: return "defensive_third";
        case RejectReason::insufficient_defenders: return "insufficient_defenders";
        case RejectReason::incomplete_tracking: return "incomplete_tracking";
        case RejectReason::restart: return "restart";
        case RejectReason::no_events: return "no_events";
        case RejectReason::orientation_unknown: return "orientation_unknown";
    }
    return "none";
}

const char* to_string(OutcomeLabel::Reason r) {
    switch (r) {
        case OutcomeLabel::Reason::none: return "none";
        case OutcomeLabel::Reason::penalty_area_entry: return "penalty_area_entry";
        case OutcomeLabel::Reason::shot: return "shot";
        case OutcomeLabel::Reason::goal: return "goal";
    }
    return "none";
}

std::vector<Turnover> detect_turnovers(const std::vector<SyncedEvent>& events,
                                       const GateConfig& cfg) {
    std::vector<Turnover> turnovers;
    std::optional<Team> possession;
    int possession_period = 0;

    for (std::size_t i = 0; i < events.size(); ++i) {
        const MatchEvent& e = events[i].event;
        if (!e.updates_possession()) continue;

        if (possession && possession_period == e.period && e.team != *possession &&
            !e.is_restart()) {
            bool forced = e.kind == EventKind::tackle || e.kind == EventKind::interception ||
                          (e.kind == EventKind::duel && e.outcome &&
                           *e.outcome == EventOutcome::won);
            if (!forced) {
                // Pressure by the gaining side shortly before the change also
                // makes it opponent-induced.
                for (std::size_t back = i; back-- > 0;) {
                    const MatchEvent& prior = events[back].event;
                    if (prior.period != e.period) break;
                    if (e.timestamp_ms - prior.timestamp_ms > cfg.pressure_lookback_ms) break;
                    if (prior.kind == EventKind::pressure && prior.team == e.team) {
                        forced = true;
                        break;
                    }
                }
            }
            if (forced) {
                turnovers.push_back({events[i], *possession, e.team, i});
            }
        }
        possession = e.team;
        possession_period = e.period;
    }
    return turnovers;
}

std::array<std::string, 4> identify_back_four(const Frame& frame, Team losing_team) {
    std::vector<const PlayerState*> outfield;
    for (const auto& p : frame.players) {
        if (p.team == losing_team && !p.is_goalkeeper) outfield.push_back(&p);
    }
    if (outfield.size() < 4) {
        throw InsufficientDefendersError("frame " + std::to_string(frame.frame_id) + ": only " +
                                         std::to_string(outfield.size()) +
                                         " outfield defenders tracked");
    }
    std::sort(outfield.begin(), outfield.end(), [](const PlayerState* a, const PlayerState* b) {
        return a->position.x < b->position.x ||
               (a->position.x == b->position.x && a->player_id < b->player_id);
    });
    return {outfield[0]->player_id, outfield[1]->player_id, outfield[2]->player_id,
            outfield[3]->player_id};
}

namespace {

std::int64_t frame_timestamp(const TransitionSequence& seq, std::int64_t frame_id,
                             std::int64_t fallback) {
    for (const auto& f : seq.frames) {
        if (f.frame_id == frame_id) return f.timestamp_ms;
    }
    return fallback;
}

}  // namespace

OutcomeLabel label_outcome(const TransitionSequence& seq, const Pitch& pitch) {
    const Team gaining = opponent(seq.losing_team);

    // Possession timeline from the turnover onward, in frame time.
    std::vector<std::pair<std::int64_t, Team>> timeline;
    timeline.emplace_back(
        frame_timestamp(seq, seq.turnover_event.frame_id, seq.turnover_event.event.timestamp_ms),
        gaining);
    for (const auto& s : seq.events) {
        if (s.event.updates_possession()) {
            timeline.emplace_back(frame_timestamp(seq, s.frame_id, s.event.timestamp_ms),
                                  s.event.team);
        }
    }

    auto possession_at = [&](std::int64_t ts) -> std::optional<Team> {
        std::optional<Team> owner;
        for (const auto& [t, team] : timeline) {
            if (t <= ts) owner = team;
        }
        return owner;  // nullopt before the turnover instant
    };

    std::int64_t best_ts = 0;
    int best_rank = -1;  // ranks: entry 0, shot 1, goal 2
    OutcomeLabel::Reason best_reason = OutcomeLabel::Reason::none;
    auto consider = [&](std::int64_t ts, int rank, OutcomeLabel::Reason reason) {
        if (best_rank < 0 || ts < best_ts || (ts == best_ts && rank < best_rank)) {
            best_ts = ts;
            best_rank = rank;
            best_reason = reason;
        }
    };

    for (const auto& f : seq.frames) {
        if (!pitch.in_penalty_box(f.ball.position)) continue;
        auto owner = possession_at(f.timestamp_ms);
        if (owner && *owner == gaining) {
            consider(f.timestamp_ms, 0, OutcomeLabel::Reason::penalty_area_entry);
        }
    }
    for (const auto& s : seq.events) {
        if (s.event.team != gaining) continue;
        std::int64_t ts = frame_timestamp(seq, s.frame_id, s.event.timestamp_ms);
        if (s.event.kind == EventKind::shot) consider(ts, 1, OutcomeLabel::Reason::shot);
        if (s.event.kind == EventKind::goal) consider(ts, 2, OutcomeLabel::Reason::goal);
    }

    if (best_rank < 0) return {1, OutcomeLabel::Reason::none};
    return {0, best_reason};
}

ExtractionOutcome extract_sequence(const Turnover& turnover,
                                   const std::vector<SyncedEvent>& events,
                                   const FrameIndex& index, const Pitch& pitch,
                                   const GateConfig& cfg,
                                   std::optional<bool> losing_attacks_right) {
    if (!losing_attacks_right) return {std::nullopt, RejectReason::orientation_unknown};

    const int period = turnover.first_touch.event.period;
    const bool canonical = *losing_attacks_right;

    // Up to max_events subsequent events in the same period; substitutions
    // do not count toward the window.
    std::vector<SyncedEvent> seq_events;
    for (std::size_t i = turnover.event_index + 1;
         i < events.size() && static_cast<int>(seq_events.size()) < cfg.max_events; ++i) {
        if (events[i].event.period != period) break;
        if (events[i].event.kind == EventKind::substitution) continue;
        seq_events.push_back(events[i]);
    }
    if (seq_events.empty()) return {std::nullopt, RejectReason::no_events};

    // Gate 1: turnover inside the defensive third of the gaining team,
    // measured at the matched frame.
    const Frame* turnover_frame = index.by_id(period, turnover.first_touch.frame_id);
    if (!turnover_frame) return {std::nullopt, RejectReason::incomplete_tracking};
    double ball_x = canonical ? turnover_frame->ball.position.x
                              : pitch.reflect(turnover_frame->ball.position).x;
    if (ball_x < cfg.min_turnover_x) return {std::nullopt, RejectReason::defensive_third};

    // Window union; ids are consecutive within a period, so every integer
    // id in each window must resolve.
    std::set<std::int64_t> wanted;
    for (const auto& s : seq_events) {
        for (std::int64_t id = s.window.first; id <= s.window.second; ++id) wanted.insert(id);
    }

    bool missing_frame = false;
    bool short_defense = false;
    std::vector<const Frame*> raw_frames;
    raw_frames.reserve(wanted.size());
    for (std::int64_t id : wanted) {
        const Frame* f = index.by_id(period, id);
        if (!f) {
            missing_frame = true;
            continue;
        }
        std::size_t outfield = 0;
        for (const auto& p : f->players) {
            if (p.team == turnover.losing_team && !p.is_goalkeeper) ++outfield;
        }
        if (outfield < 4) short_defense = true;
        raw_frames.push_back(f);
    }
    // Gate order follows the validity criteria numbering.
    if (short_defense) return {std::nullopt, RejectReason::insufficient_defenders};
    if (missing_frame) return {std::nullopt, RejectReason::incomplete_tracking};

    // Gate 4: no restart among the sequence events.
    for (const auto& s : seq_events) {
        if (s.event.is_restart()) return {std::nullopt, RejectReason::restart};
    }

    TransitionSequence seq;
    seq.seq_id = "seq_" + turnover.first_touch.event.event_id;
    seq.losing_team = turnover.losing_team;
    seq.turnover_ball_x = ball_x;

    auto canonical_event = [&](SyncedEvent s) {
        if (!canonical && s.event.location) *s.event.location = pitch.reflect(*s.event.location);
        return s;
    };
    seq.turnover_event = canonical_event(turnover.first_touch);
    seq.events.reserve(seq_events.size());
    for (const auto& s : seq_events) seq.events.push_back(canonical_event(s));

    seq.frames.reserve(raw_frames.size());
    seq.back_four.reserve(raw_frames.size());
    for (const Frame* f : raw_frames) {
        Frame cf = normalize_orientation(*f, canonical, pitch);
        seq.back_four.push_back(identify_back_four(cf, seq.losing_team));
        seq.frames.push_back(std::move(cf));
    }

    seq.label = label_outcome(seq, pitch);
    return {std::move(seq), RejectReason::none};
}

void extract_each(const std::vector<SyncedEvent>& events, const std::vector<Frame>& frames,
                  const Pitch& pitch, const GateConfig& cfg,
                  const std::function<void(TransitionSequence&&)>& sink,
                  ExtractionResult* summary) {
    cfg.validate();
    pitch.validate();
    FrameIndex index(frames);
    auto turnovers = detect_turnovers(events, cfg);

    std::map<std::pair<int, int>, std::optional<bool>> directions;  // (team, period)
    auto direction_for = [&](Team team, int period) {
        auto key = std::make_pair(static_cast<int>(team), period);
        auto it = directions.find(key);
        if (it == directions.end()) {
            it = directions.emplace(key, infer_attack_direction(frames, team, period, pitch)).first;
        }
        return it->second;
    };

    if (summary) summary->turnover_count = turnovers.size();
    for (const auto& t : turnovers) {
        auto outcome = extract_sequence(t, events, index, pitch, cfg,
                                        direction_for(t.losing_team, t.first_touch.event.period));
        if (outcome.sequence) {
            sink(std::move(*outcome.sequence));
        } else if (summary) {
            summary->rejects.push_back({t.first_touch.event.event_id, outcome.reason});
        }
    }
}

ExtractionResult extract_all(const std::vector<SyncedEvent>& events,
                             const std::vector<Frame>& frames, const Pitch& pitch,
                             const GateConfig& cfg) {
    ExtractionResult result;
    extract_each(
        events, frames, pitch, cfg,
        [&](TransitionSequence&& seq) { result.sequences.push_back(std::move(seq)); }, &result);
    return result;
}

std::string to_json_line(const TransitionSequence& seq) {
    return detail::sequence_to_json(seq).dump();
}

std::vector<TransitionSequence> read_sequences(const std::string& path) {
    std::vector<TransitionSequence> out;
    std::size_t line_no = 0;
    for (const auto& line : split_lines(read_file(path))) {
        ++line_no;
        if (line.empty()) continue;
        auto j = detail::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw CorruptInputError(path + ":" + std::to_string(line_no) + ": invalid JSON");
        }
        out.push_back(detail::sequence_from_json(j));
    }
    return out;
}

void write_sequences(const std::string& path, const std::vector<TransitionSequence>& seqs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    for (const auto& s : seqs) out << to_json_line(s) << '\n';
}

std::string rejects_csv(const ExtractionResult& result) {
    std::string csv = "turnover_id,reason\n";
    for (const auto& r : result.rejects) {
        csv += r.turnover_id;
        csv += ',';
        csv += to_string(r.reason);
        csv += '\n';
    }
    return csv;
}

}  // namespace backline
