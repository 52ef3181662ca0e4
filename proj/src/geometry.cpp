#include "backline/geometry.hpp"

#include <algorithm>
#include <string>

namespace backline {

void Pitch::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(length) || !positive(width) || !positive(penalty_box_depth) ||
        !positive(penalty_box_width) || !positive(proximity_buffer) ||
        !positive(final_third_depth) || !positive(ball_radius_zone)) {
        throw ValidationError("pitch: all dimensions must be finite and positive");
    }
    if (length <= 2.0 * final_third_depth) {
        throw ValidationError("pitch: length must exceed twice the final-third depth");
    }
    if (penalty_box_width >= width) {
        throw ValidationError("pitch: penalty box wider than the pitch");
    }
    if (penalty_box_depth >= final_third_depth) {
        throw ValidationError("pitch: penalty box deeper than the final third");
    }
}

const char* to_string(ZoneKind kind) {
    switch (kind) {
        case ZoneKind::central_final_third: return "central_final_third";
        case ZoneKind::penalty_box_proximity: return "penalty_box_proximity";
        case ZoneKind::wing_pockets: return "wing_pockets";
        case ZoneKind::ball_carrier_radius: return "ball_carrier_radius";
    }
    return "unknown";
}

double ZoneWeights::of(ZoneKind kind) const {
    switch (kind) {
        case ZoneKind::central_final_third: return central_final_third;
        case ZoneKind::penalty_box_proximity: return penalty_box_proximity;
        case ZoneKind::wing_pockets: return wing_pockets;
        case ZoneKind::ball_carrier_radius: return ball_carrier_radius;
    }
    return 0.0;
}

void ZoneWeights::validate() const {
    for (ZoneKind k : {ZoneKind::central_final_third, ZoneKind::penalty_box_proximity,
                       ZoneKind::wing_pockets, ZoneKind::ball_carrier_radius}) {
        double w = of(k);
        if (!(w > 0.0 && w < 1.0)) {
            throw ValidationError(std::string("zone weight out of (0,1): ") + to_string(k));
        }
    }
    if (std::abs(sum() - 1.0) > 1e-9) {
        throw ValidationError("zone weights must sum to 1");
    }
}

std::optional<Zone> zone_membership(Point2 p, Point2 ball, const Pitch& pitch,
                                    const ZoneWeights& weights) {
    const double half_width = pitch.width / 2.0;
    const double half_box = pitch.penalty_box_width / 2.0;
    const double lateral = std::abs(p.y - half_width);

    struct Candidate {
        ZoneKind kind;
        bool inside;
    };
    const Candidate candidates[] = {
        {ZoneKind::central_final_third,
         p.x >= pitch.penalty_box_depth && p.x <= pitch.final_third_depth &&
             lateral <= half_box},
        {ZoneKind::penalty_box_proximity,
         p.x >= 0.0 && p.x <= pitch.penalty_box_depth + pitch.proximity_buffer &&
             lateral <= half_box + pitch.proximity_buffer},
        {ZoneKind::wing_pockets,
         p.x >= 0.0 && p.x <= pitch.final_third_depth && lateral > half_box},
        {ZoneKind::ball_carrier_radius, distance(p, ball) < pitch.ball_radius_zone},
    };

    std::optional<Zone> best;
    for (const auto& c : candidates) {
        if (!c.inside) continue;
        double w = weights.of(c.kind);
        if (!best || w > best->weight) best = Zone{c.kind, w};
    }
    return best;
}

std::vector<Point2> convex_hull(std::vector<Point2> points) {
    std::sort(points.begin(), points.end(), [](Point2 a, Point2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());

    const std::size_t n = points.size();
    if (n < 3) return points;

    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {  // upper
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_area(std::span<const Point2> ring) {
    if (ring.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
        const Point2& a = ring[i];
        const Point2& b = ring[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return std::abs(twice) / 2.0;
}

double convex_hull_area(std::span<const Point2> points) {
    if (points.size() < 3) {
        throw DegenerateGeometryError("convex_hull_area: need at least 3 points, got " +
                                      std::to_string(points.size()));
    }
    for (Point2 p : points) {
        if (!is_finite(p)) throw DegenerateGeometryError("convex_hull_area: non-finite point");
    }
    auto hull = convex_hull(std::vector<Point2>(points.begin(), points.end()));
    return polygon_area(hull);
}

}  // namespace backline
