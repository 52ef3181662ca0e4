#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "backline/sync.hpp"
#include "backline/types.hpp"

namespace backline {

struct GateConfig {
    double min_turnover_x = 70.0;       // canonical meters from the losing goal
    int max_events = 10;
    std::int64_t pressure_lookback_ms = 2000;

    void validate() const;
};

// A forced change of possession: the first opponent touch after the losing
// team's spell, plus why it counts as opponent-induced.
struct Turnover {
    SyncedEvent first_touch;
    Team losing_team = Team::home;
    Team gaining_team = Team::away;
    std::size_t event_index = 0;  // into the synced stream
};

enum class RejectReason {
    none,
    defensive_third,        // turnover ball short of the 70 m gate
    insufficient_defenders, // < 4 tracked outfield defenders in some frame
    incomplete_tracking,    // missing frame inside a window
    restart,                // restart event among the sequence events
    no_events,              // turnover with no subsequent events in period
    orientation_unknown,
};

const char* to_string(RejectReason r);

struct OutcomeLabel {
    enum class Reason { none, penalty_area_entry, shot, goal };

    int value = 1;  // 1 success, 0 failure
    Reason reason = Reason::none;
};

const char* to_string(OutcomeLabel::Reason r);

struct TransitionSequence {
    std::string seq_id;
    Team losing_team = Team::home;
    SyncedEvent turnover_event;          // canonical coordinates
    std::vector<SyncedEvent> events;     // <= max_events, canonical
    std::vector<Frame> frames;           // window union, canonical, time order
    std::vector<std::array<std::string, 4>> back_four;  // per frame
    OutcomeLabel label;
    double turnover_ball_x = 0.0;        // canonical
};

std::vector<Turnover> detect_turnovers(const std::vector<SyncedEvent>& events,
                                       const GateConfig& cfg = {});

// Four smallest-x outfield players of the losing team; ties by player id.
// Expects a canonical frame. Throws InsufficientDefendersError below 4.
std::array<std::string, 4> identify_back_four(const Frame& frame, Team losing_team);

OutcomeLabel label_outcome(const TransitionSequence& seq, const Pitch& pitch);

struct ExtractionOutcome {
    std::optional<TransitionSequence> sequence;
    RejectReason reason = RejectReason::none;
};

// Applies the four validity gates; `losing_attacks_right` is the losing
// team's attack direction in the raw coordinates (nullopt -> rejected as
// orientation_unknown).
ExtractionOutcome extract_sequence(const Turnover& turnover,
                                   const std::vector<SyncedEvent>& events,
                                   const FrameIndex& index, const Pitch& pitch,
                                   const GateConfig& cfg,
                                   std::optional<bool> losing_attacks_right);

struct ExtractionResult {
    struct Reject {
        std::string turnover_id;  // event id of the first opponent touch
        RejectReason reason = RejectReason::none;
    };

    std::vector<TransitionSequence> sequences;
    std::vector<Reject> rejects;
    std::size_t turnover_count = 0;
};

ExtractionResult extract_all(const std::vector<SyncedEvent>& events,
                             const std::vector<Frame>& frames, const Pitch& pitch,
                             const GateConfig& cfg = {});

// Streaming variant: sequences are handed to `sink` and not retained.
void extract_each(const std::vector<SyncedEvent>& events, const std::vector<Frame>& frames,
                  const Pitch& pitch, const GateConfig& cfg,
                  const std::function<void(TransitionSequence&&)>& sink,
                  ExtractionResult* summary = nullptr);

std::string to_json_line(const TransitionSequence& seq);
std::vector<TransitionSequence> read_sequences(const std::string& path);
void write_sequences(const std::string& path, const std::vector<TransitionSequence>& seqs);
std::string rejects_csv(const ExtractionResult& result);

}  // namespace backline
