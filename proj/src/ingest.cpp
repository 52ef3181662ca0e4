#include "backline/ingest.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "backline/errors.hpp"
#include "backline/textio.hpp"
#include "json_convert.hpp"

namespace backline {

namespace {

using detail::json;

constexpr double kMaxRejectFraction = 0.05;

json parse_line_or_throw(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ValidationError("invalid JSON");
    return j;
}

template <typename T, typename ParseFn>
std::vector<T> read_jsonl(const std::string& path, ReadReport* report, ParseFn parse) {
    std::string text = read_file(path);
    ReadReport local;
    ReadReport& rep = report ? *report : local;

    std::vector<T> out;
    std::size_t line_no = 0;
    for (const auto& line : split_lines(text)) {
        ++line_no;
        if (line.empty()) continue;
        ++rep.total_lines;
        std::string error;
        auto item = parse(line, &error, &rep.warnings);
        if (item) {
            out.push_back(std::move(*item));
        } else {
            rep.rejects.push_back({line_no, error});
        }
    }

    if (rep.total_lines == 0) {
        rep.warnings.push_back("empty input: " + path);
    } else if (static_cast<double>(rep.rejects.size()) >
               kMaxRejectFraction * static_cast<double>(rep.total_lines)) {
        throw CorruptInputError(path + ": " + std::to_string(rep.rejects.size()) + " of " +
                                std::to_string(rep.total_lines) + " lines rejected");
    }
    return out;
}

}  // namespace

std::optional<Frame> parse_tracking_line(const std::string& line, std::string* error,
                                         std::vector<std::string>* warnings) {
    try {
        return detail::frame_from_json(parse_line_or_throw(line), warnings);
    } catch (const std::exception& e) {
        if (error) *error = e.what();
        return std::nullopt;
    }
}

std::optional<MatchEvent> parse_event_line(const std::string& line, std::string* error,
                                           std::vector<std::string>* warnings) {
    try {
        return detail::event_from_json(parse_line_or_throw(line), warnings);
    } catch (const std::exception& e) {
        if (error) *error = e.what();
        return std::nullopt;
    }
}

std::vector<Frame> read_tracking(const std::string& path, ReadReport* report) {
    auto frames = read_jsonl<Frame>(
        path, report, [](const std::string& line, std::string* error, std::vector<std::string>* w) {
            return parse_tracking_line(line, error, w);
        });
    std::stable_sort(frames.begin(), frames.end(), [](const Frame& a, const Frame& b) {
        return a.period < b.period || (a.period == b.period && a.frame_id < b.frame_id);
    });
    return frames;
}

std::vector<MatchEvent> read_events(const std::string& path, ReadReport* report) {
    auto events = read_jsonl<MatchEvent>(
        path, report, [](const std::string& line, std::string* error, std::vector<std::string>* w) {
            return parse_event_line(line, error, w);
        });
    std::stable_sort(events.begin(), events.end(), [](const MatchEvent& a, const MatchEvent& b) {
        return a.period < b.period || (a.period == b.period && a.timestamp_ms < b.timestamp_ms);
    });
    return events;
}

std::string to_json_line(const Frame& frame) { return detail::frame_to_json(frame).dump(); }

std::string to_json_line(const MatchEvent& event) { return detail::event_to_json(event).dump(); }

void write_tracking(const std::string& path, const std::vector<Frame>& frames) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    for (const auto& f : frames) out << to_json_line(f) << '\n';
}

void write_events(const std::string& path, const std::vector<MatchEvent>& events) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    for (const auto& e : events) out << to_json_line(e) << '\n';
}

ValidationSummary validate_match(const std::vector<Frame>& frames,
                                 const std::vector<MatchEvent>& events) {
    ValidationSummary summary;

    const Frame* prev = nullptr;
    for (const auto& f : frames) {
        auto& stats = summary.periods[f.period];
        ++stats.frames;
        ++summary.players_per_frame[f.players.size()];
        for (const auto& p : f.players) {
            if (p.speed() > 13.0) ++summary.implausible_speed_players;
        }
        if (prev && prev->period == f.period) {
            std::int64_t dt = f.timestamp_ms - prev->timestamp_ms;
            if (std::llabs(dt - 40) > 1) ++stats.rate_gaps;
        }
        prev = &f;
    }
    for (const auto& e : events) ++summary.periods[e.period].events;

    for (const auto& [period, stats] : summary.periods) {
        if (stats.events > 0 && stats.frames == 0) {
            summary.excluded = true;
            summary.notes.push_back("period " + std::to_string(period) +
                                    " has events but no tracking; match excluded");
        }
        if (stats.rate_gaps > 0) {
            summary.notes.push_back("period " + std::to_string(period) + ": " +
                                    std::to_string(stats.rate_gaps) + " frame-rate gaps");
        }
    }
    return summary;
}

std::optional<std::string> infer_carrier(const Frame& frame, Team possession_team,
                                         double max_distance_m) {
    if (frame.ball.carrier) return frame.ball.carrier;
    const PlayerState* best = nullptr;
    double best_d = max_distance_m;
    for (const auto& p : frame.players) {
        if (p.team != possession_team) continue;
        double d = distance(p.position, frame.ball.position);
        if (d < best_d || (best && d == best_d && p.player_id < best->player_id)) {
            best = &p;
            best_d = d;
        }
    }
    if (best) return best->player_id;
    return std::nullopt;
}

}  // namespace backline
