#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "backline/transitions.hpp"
#include "backline/types.hpp"

namespace backline {

struct IndicatorConfig {
    double lambda = 0.5;           // hull-area vs attacker-distance blend
    double pressure_radius_m = 3.0;
    double epsilon = 1.0;          // zone-ratio regularizer
    ZoneWeights zone_weights{};
    int top_attackers = 3;

    void validate() const;
};

struct FrameIndicators {
    std::int64_t frame_id = 0;
    double stretch_index = 0.0;
    int pressure_index = 0;
    double space_score = 0.0;
    double line_height_abs = 0.0;
    double line_height_rel = 0.0;
    bool degraded = false;  // no attackers available for the distance term
};

// lambda * hull_area(defenders) + (1-lambda) * mean nearest-defender
// distance over the top attackers. Exactly 4 defenders expected.
double stretch_index(std::span<const Point2> defenders, std::span<const Point2> attackers,
                     const IndicatorConfig& cfg = {}, bool* degraded = nullptr);

// Count of attackers strictly inside pressure_radius_m of some defender.
int pressure_index(std::span<const Point2> defenders, std::span<const Point2> attackers,
                   const IndicatorConfig& cfg = {});

// Zone-weighted (D-A)/(D+A+eps) over the four tactical zones; players are
// assigned to at most their highest-priority zone. Outfield players only.
double space_score(std::span<const Point2> defending, std::span<const Point2> attacking,
                   Point2 ball, const Pitch& pitch, const IndicatorConfig& cfg = {});

double line_height_abs(std::span<const Point2> back_four);
double line_height_rel(Point2 ball, double line_height);

// The `count` outfield players of `attacking_team` closest to the defended
// goal (smallest canonical x); ties by player id.
std::vector<Point2> top_advanced_attackers(const Frame& frame, Team attacking_team, int count);

std::vector<FrameIndicators> compute_sequence_indicators(const TransitionSequence& seq,
                                                         const Pitch& pitch,
                                                         const IndicatorConfig& cfg = {});

}  // namespace backline
