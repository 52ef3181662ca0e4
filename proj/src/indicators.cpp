#include "backline/indicators.hpp"

#include <algorithm>
#include <limits>

#include "backline/errors.hpp"

namespace backline {

void IndicatorConfig::validate() const {
    if (lambda < 0.0 || lambda > 1.0) throw ConfigError("indicators: lambda must be in [0,1]");
    if (epsilon <= 0.0) throw ConfigError("indicators: epsilon must be positive");
    if (pressure_radius_m <= 0.0) throw ConfigError("indicators: pressure radius must be positive");
    if (top_attackers <= 0) throw ConfigError("indicators: top_attackers must be positive");
    zone_weights.validate();
}

namespace {

double min_distance_to(std::span<const Point2> defenders, Point2 a) {
    double best = std::numeric_limits<double>::infinity();
    for (Point2 d : defenders) best = std::min(best, distance(a, d));
    return best;
}

}  // namespace

double stretch_index(std::span<const Point2> defenders, std::span<const Point2> attackers,
                     const IndicatorConfig& cfg, bool* degraded) {
    if (defenders.size() != 4) {
        throw DegenerateGeometryError("stretch_index: expected 4 defenders, got " +
                                      std::to_string(defenders.size()));
    }
    double area = convex_hull_area(defenders);

    double pda = 0.0;
    if (attackers.empty()) {
        if (degraded) *degraded = true;
    } else {
        if (degraded) *degraded = false;
        for (Point2 a : attackers) pda += min_distance_to(defenders, a);
        pda /= static_cast<double>(attackers.size());
    }
    return cfg.lambda * area + (1.0 - cfg.lambda) * pda;
}

int pressure_index(std::span<const Point2> defenders, std::span<const Point2> attackers,
                   const IndicatorConfig& cfg) {
    int count = 0;
    for (Point2 a : attackers) {
        if (min_distance_to(defenders, a) < cfg.pressure_radius_m) ++count;
    }
    return count;
}

double space_score(std::span<const Point2> defending, std::span<const Point2> attacking,
                   Point2 ball, const Pitch& pitch, const IndicatorConfig& cfg) {
    constexpr ZoneKind kinds[] = {ZoneKind::central_final_third, ZoneKind::penalty_box_proximity,
                                  ZoneKind::wing_pockets, ZoneKind::ball_carrier_radius};
    double d_count[4] = {0, 0, 0, 0};
    double a_count[4] = {0, 0, 0, 0};

    auto tally = [&](std::span<const Point2> players, double* counts) {
        for (Point2 p : players) {
            auto zone = zone_membership(p, ball, pitch, cfg.zone_weights);
            if (!zone) continue;
            for (int z = 0; z < 4; ++z) {
                if (kinds[z] == zone->kind) {
                    counts[z] += 1.0;
                    break;
                }
            }
        }
    };
    tally(defending, d_count);
    tally(attacking, a_count);

    double score = 0.0;
    for (int z = 0; z < 4; ++z) {
        double w = cfg.zone_weights.of(kinds[z]);
        score += w * (d_count[z] - a_count[z]) / (d_count[z] + a_count[z] + cfg.epsilon);
    }
    return score;
}

double line_height_abs(std::span<const Point2> back_four) {
    if (back_four.size() != 4) {
        throw DegenerateGeometryError("line_height_abs: expected 4 defenders");
    }
    double sum = 0.0;
    for (Point2 p : back_four) sum += p.x;
    return sum / 4.0;
}

double line_height_rel(Point2 ball, double line_height) { return ball.x - line_height; }

std::vector<Point2> top_advanced_attackers(const Frame& frame, Team attacking_team, int count) {
    std::vector<const PlayerState*> attackers;
    for (const auto& p : frame.players) {
        if (p.team == attacking_team && !p.is_goalkeeper) attackers.push_back(&p);
    }
    std::sort(attackers.begin(), attackers.end(), [](const PlayerState* a, const PlayerState* b) {
        return a->position.x < b->position.x ||
               (a->position.x == b->position.x && a->player_id < b->player_id);
    });
    if (static_cast<int>(attackers.size()) > count) attackers.resize(count);

    std::vector<Point2> positions;
    positions.reserve(attackers.size());
    for (const auto* a : attackers) positions.push_back(a->position);
    return positions;
}

std::vector<FrameIndicators> compute_sequence_indicators(const TransitionSequence& seq,
                                                         const Pitch& pitch,
                                                         const IndicatorConfig& cfg) {
    cfg.validate();
    const Team attacking = opponent(seq.losing_team);

    std::vector<FrameIndicators> out;
    out.reserve(seq.frames.size());
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        const Frame& frame = seq.frames[i];

        std::array<Point2, 4> back_four{};
        for (int d = 0; d < 4; ++d) {
            const PlayerState* p = frame.find_player(seq.back_four[i][d]);
            if (!p) {
                throw InsufficientDefendersError("back-four player " + seq.back_four[i][d] +
                                                 " missing from frame " +
                                                 std::to_string(frame.frame_id));
            }
            back_four[d] = p->position;
        }

        auto attackers = top_advanced_attackers(frame, attacking, cfg.top_attackers);

        std::vector<Point2> defending, attacking_all;
        for (const auto& p : frame.players) {
            if (p.is_goalkeeper) continue;
            (p.team == seq.losing_team ? defending : attacking_all).push_back(p.position);
        }

        FrameIndicators fi;
        fi.frame_id = frame.frame_id;
        fi.stretch_index = stretch_index(back_four, attackers, cfg, &fi.degraded);
        fi.pressure_index = pressure_index(back_four, attackers, cfg);
        fi.space_score = space_score(defending, attacking_all, frame.ball.position, pitch, cfg);
        fi.line_height_abs = line_height_abs(back_four);
        fi.line_height_rel = line_height_rel(frame.ball.position, fi.line_height_abs);
        out.push_back(fi);
    }
    return out;
}

}  // namespace backline
