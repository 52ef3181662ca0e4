#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "backline/types.hpp"

namespace backline {

struct SyncConfig {
    std::int64_t search_halfwidth_ms = 5000;
    std::int64_t step_ms = 40;
    int offset_events = 20;  // located on-ball events used per period
    std::int64_t candidate_halfwidth_ms = 1000;
    int window_frames = 30;
    double w_ball = 0.5;
    double w_player = 0.4;
    double w_plausibility = 0.1;
    double ball_scale_m = 5.0;
    double player_scale_m = 3.0;
    double max_plausible_speed = 13.0;

    void validate() const;
};

struct SyncedEvent {
    MatchEvent event;
    std::int64_t frame_id = -1;
    double sync_score = 0.0;
    // First/last frame id of the 30-frames-each-side window, clipped at
    // period bounds.
    std::pair<std::int64_t, std::int64_t> window{0, 0};
};

// Period-partitioned lookup over frames already sorted by (period, frame_id).
class FrameIndex {
public:
    explicit FrameIndex(const std::vector<Frame>& frames);

    std::span<const Frame> period_frames(int period) const;
    const Frame* by_id(int period, std::int64_t frame_id) const;
    const Frame* nearest_by_time(int period, std::int64_t timestamp_ms) const;
    // Index of the nearest-by-time frame within period_frames(period).
    std::optional<std::size_t> nearest_index(int period, std::int64_t timestamp_ms) const;

private:
    const std::vector<Frame>* frames_;
    std::map<int, std::pair<std::size_t, std::size_t>> spans_;  // period -> [begin, end)
};

// Per-period clock offset minimizing mean ball-to-event distance over the
// first `offset_events` located on-ball events, searched on a step_ms grid.
// A minimum on the search boundary (true shift out of range) or a period
// with no usable events raises CannotSyncError.
std::map<int, std::int64_t> estimate_offset(const std::vector<Frame>& frames,
                                            const std::vector<MatchEvent>& events,
                                            const SyncConfig& cfg = {});

// Most plausible frame within +/- candidate_halfwidth_ms of the corrected
// timestamp. Events without a location fall back to nearest-by-time with
// sync_score 0 so restart markers stay visible downstream. Returns nullopt
// when the acting player is missing from every candidate frame (located
// events only).
std::optional<SyncedEvent> match_event(const MatchEvent& event, const FrameIndex& index,
                                       std::int64_t offset_ms, const SyncConfig& cfg = {});

struct SyncResult {
    std::vector<SyncedEvent> synced;
    std::map<int, std::int64_t> offsets;
    std::vector<std::string> unmatched;  // event ids dropped
    std::size_t monotonicity_anomalies = 0;
};

SyncResult sync_events(const std::vector<Frame>& frames, const std::vector<MatchEvent>& events,
                       const SyncConfig& cfg = {});

std::string to_json_line(const SyncedEvent& synced);
std::vector<SyncedEvent> read_synced(const std::string& path);
void write_synced(const std::string& path, const std::vector<SyncedEvent>& synced);

}  // namespace backline
