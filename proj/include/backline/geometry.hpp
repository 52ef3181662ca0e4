#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "backline/errors.hpp"

namespace backline {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point2&) const = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Pitch dimensions in meters. Canonical orientation puts the defending
// team's own goal line at x = 0 and its attacking direction toward +x.
struct Pitch {
    double length = 105.0;
    double width = 68.0;
    double penalty_box_depth = 16.5;
    double penalty_box_width = 40.32;
    double proximity_buffer = 5.0;
    double final_third_depth = 35.0;
    double ball_radius_zone = 5.0;

    void validate() const;

    bool on_pitch(Point2 p) const {
        return p.x >= 0.0 && p.x <= length && p.y >= 0.0 && p.y <= width;
    }

    // Penalty box in front of the defending goal (x = 0).
    bool in_penalty_box(Point2 p) const {
        return p.x >= 0.0 && p.x <= penalty_box_depth &&
               std::abs(p.y - width / 2.0) <= penalty_box_width / 2.0;
    }

    Point2 reflect(Point2 p) const { return {length - p.x, width - p.y}; }
};

enum class ZoneKind {
    central_final_third,
    penalty_box_proximity,
    wing_pockets,
    ball_carrier_radius,
};

const char* to_string(ZoneKind kind);

// Tactical weights per zone; priority for overlap resolution is
// descending weight.
struct ZoneWeights {
    double central_final_third = 0.35;
    double penalty_box_proximity = 0.30;
    double wing_pockets = 0.20;
    double ball_carrier_radius = 0.15;

    double of(ZoneKind kind) const;
    double sum() const {
        return central_final_third + penalty_box_proximity + wing_pockets +
               ball_carrier_radius;
    }
    void validate() const;
};

struct Zone {
    ZoneKind kind;
    double weight;
};

// Highest-priority zone containing p, or nullopt. Expects canonical
// orientation (defending goal at x = 0). Zone edges are closed except
// the ball radius, which is strict.
std::optional<Zone> zone_membership(Point2 p, Point2 ball, const Pitch& pitch,
                                    const ZoneWeights& weights = {});

// Monotone-chain convex hull, counter-clockwise, no duplicate endpoint.
// Collinear inputs collapse to a 2-point "hull".
std::vector<Point2> convex_hull(std::vector<Point2> points);

// Shoelace area of a simple polygon given as a CCW ring.
double polygon_area(std::span<const Point2> ring);

// Hull + shoelace. Throws DegenerateGeometryError for fewer than 3 points;
// collinear sets yield 0.
double convex_hull_area(std::span<const Point2> points);

}  // namespace backline
