#include "backline/sync.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "backline/errors.hpp"
#include "backline/textio.hpp"
#include "json_convert.hpp"

namespace backline {

void SyncConfig::validate() const {
    if (step_ms <= 0 || search_halfwidth_ms <= 0 || candidate_halfwidth_ms <= 0 ||
        window_frames <= 0 || offset_events <= 0) {
        throw ConfigError("sync: window, step and search parameters must be positive");
    }
    if (ball_scale_m <= 0 || player_scale_m <= 0 || max_plausible_speed <= 0) {
        throw ConfigError("sync: length scales and speed cap must be positive");
    }
    if (w_ball < 0 || w_player < 0 || w_plausibility < 0) {
        throw ConfigError("sync: score weights must be non-negative");
    }
}

FrameIndex::FrameIndex(const std::vector<Frame>& frames) : frames_(&frames) {
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= frames.size(); ++i) {
        if (i == frames.size() || frames[i].period != frames[begin].period) {
            spans_[frames[begin].period] = {begin, i};
            begin = i;
        }
    }
}

std::span<const Frame> FrameIndex::period_frames(int period) const {
    auto it = spans_.find(period);
    if (it == spans_.end()) return {};
    return std::span<const Frame>(frames_->data() + it->second.first,
                                  it->second.second - it->second.first);
}

const Frame* FrameIndex::by_id(int period, std::int64_t frame_id) const {
    auto frames = period_frames(period);
    auto it = std::lower_bound(frames.begin(), frames.end(), frame_id,
                               [](const Frame& f, std::int64_t id) { return f.frame_id < id; });
    if (it != frames.end() && it->frame_id == frame_id) return &*it;
    return nullptr;
}

std::optional<std::size_t> FrameIndex::nearest_index(int period, std::int64_t timestamp_ms) const {
    auto frames = period_frames(period);
    if (frames.empty()) return std::nullopt;
    auto it = std::lower_bound(frames.begin(), frames.end(), timestamp_ms,
                               [](const Frame& f, std::int64_t ts) { return f.timestamp_ms < ts; });
    std::size_t idx = static_cast<std::size_t>(it - frames.begin());
    if (idx == frames.size()) return idx - 1;
    if (idx > 0 &&
        timestamp_ms - frames[idx - 1].timestamp_ms <= frames[idx].timestamp_ms - timestamp_ms) {
        return idx - 1;  // earlier frame wins exact midpoints
    }
    return idx;
}

const Frame* FrameIndex::nearest_by_time(int period, std::int64_t timestamp_ms) const {
    auto idx = nearest_index(period, timestamp_ms);
    if (!idx) return nullptr;
    return &period_frames(period)[*idx];
}

std::map<int, std::int64_t> estimate_offset(const std::vector<Frame>& frames,
                                            const std::vector<MatchEvent>& events,
                                            const SyncConfig& cfg) {
    cfg.validate();
    FrameIndex index(frames);

    std::map<int, std::vector<const MatchEvent*>> probes;
    for (const auto& e : events) {
        if (!e.is_on_ball() || !e.location) continue;
        auto& list = probes[e.period];
        if (static_cast<int>(list.size()) < cfg.offset_events) list.push_back(&e);
    }

    std::map<int, std::int64_t> offsets;
    for (const auto& [period, list] : probes) {
        if (index.period_frames(period).empty()) continue;
        double best_mean = std::numeric_limits<double>::infinity();
        std::int64_t best_offset = 0;
        for (std::int64_t off = -cfg.search_halfwidth_ms; off <= cfg.search_halfwidth_ms;
             off += cfg.step_ms) {
            double total = 0.0;
            for (const MatchEvent* e : list) {
                const Frame* f = index.nearest_by_time(period, e->timestamp_ms + off);
                total += distance(f->ball.position, *e->location);
            }
            double mean = total / static_cast<double>(list.size());
            if (mean < best_mean) {
                best_mean = mean;
                best_offset = off;
            }
        }
        if (std::llabs(best_offset) == cfg.search_halfwidth_ms) {
            throw CannotSyncError("period " + std::to_string(period) +
                                  ": offset minimum on search boundary; shift out of range");
        }
        offsets[period] = best_offset;
    }
    if (offsets.empty()) {
        throw CannotSyncError("no located on-ball events to estimate clock offset");
    }
    return offsets;
}

namespace {

std::pair<std::int64_t, std::int64_t> clipped_window(std::span<const Frame> frames,
                                                     std::size_t center, int halfwidth) {
    std::size_t first = center >= static_cast<std::size_t>(halfwidth)
                            ? center - static_cast<std::size_t>(halfwidth)
                            : 0;
    std::size_t last = std::min(center + static_cast<std::size_t>(halfwidth), frames.size() - 1);
    return {frames[first].frame_id, frames[last].frame_id};
}

}  // namespace

std::optional<SyncedEvent> match_event(const MatchEvent& event, const FrameIndex& index,
                                       std::int64_t offset_ms, const SyncConfig& cfg) {
    auto frames = index.period_frames(event.period);
    if (frames.empty()) return std::nullopt;

    const std::int64_t target = event.timestamp_ms + offset_ms;

    if (!event.location) {
        // Unlocated events (restarts, substitutions) keep their stream position
        // via nearest-by-time so downstream gates can still see them.
        auto idx = index.nearest_index(event.period, target);
        SyncedEvent s{event, frames[*idx].frame_id, 0.0,
                      clipped_window(frames, *idx, cfg.window_frames)};
        return s;
    }

    auto lo = std::lower_bound(frames.begin(), frames.end(), target - cfg.candidate_halfwidth_ms,
                               [](const Frame& f, std::int64_t ts) { return f.timestamp_ms < ts; });
    auto hi = std::upper_bound(frames.begin(), frames.end(), target + cfg.candidate_halfwidth_ms,
                               [](std::int64_t ts, const Frame& f) { return ts < f.timestamp_ms; });
    if (lo == hi) return std::nullopt;

    double best_score = -1.0;
    std::size_t best_idx = 0;
    bool player_seen = false;
    for (auto it = lo; it != hi; ++it) {
        const PlayerState* actor = it->find_player(event.player_id);
        if (!actor) continue;
        player_seen = true;
        double d_ball = distance(it->ball.position, *event.location);
        double d_player = distance(actor->position, *event.location);
        double plausible = actor->speed() < cfg.max_plausible_speed ? 1.0 : 0.0;
        double score = cfg.w_ball * std::exp(-d_ball / cfg.ball_scale_m) +
                       cfg.w_player * std::exp(-d_player / cfg.player_scale_m) +
                       cfg.w_plausibility * plausible;
        if (score > best_score) {  // strict: ties keep the earliest frame
            best_score = score;
            best_idx = static_cast<std::size_t>(it - frames.begin());
        }
    }
    if (!player_seen) return std::nullopt;

    SyncedEvent s{event, frames[best_idx].frame_id, best_score,
                  clipped_window(frames, best_idx, cfg.window_frames)};
    return s;
}

SyncResult sync_events(const std::vector<Frame>& frames, const std::vector<MatchEvent>& events,
                       const SyncConfig& cfg) {
    SyncResult result;
    result.offsets = estimate_offset(frames, events, cfg);
    FrameIndex index(frames);

    std::int64_t prev_frame = -1;
    int prev_period = 0;
    for (const auto& e : events) {
        auto off = result.offsets.find(e.period);
        if (off == result.offsets.end()) {
            result.unmatched.push_back(e.event_id);
            continue;
        }
        auto synced = match_event(e, index, off->second, cfg);
        if (!synced) {
            result.unmatched.push_back(e.event_id);
            continue;
        }
        if (e.period == prev_period && synced->frame_id < prev_frame) {
            ++result.monotonicity_anomalies;
        }
        prev_period = e.period;
        prev_frame = synced->frame_id;
        result.synced.push_back(std::move(*synced));
    }
    return result;
}

std::string to_json_line(const SyncedEvent& synced) {
    return detail::synced_to_json(synced).dump();
}

std::vector<SyncedEvent> read_synced(const std::string& path) {
    std::vector<SyncedEvent> out;
    std::size_t line_no = 0;
    for (const auto& line : split_lines(read_file(path))) {
        ++line_no;
        if (line.empty()) continue;
        auto j = detail::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw CorruptInputError(path + ":" + std::to_string(line_no) + ": invalid JSON");
        }
        out.push_back(detail::synced_from_json(j));
    }
    return out;
}

void write_synced(const std::string& path, const std::vector<SyncedEvent>& synced) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    for (const auto& s : synced) out << to_json_line(s) << '\n';
}

}  // namespace backline
