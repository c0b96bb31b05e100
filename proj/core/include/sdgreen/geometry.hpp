#pragma once
#include <array>
#include <cmath>
#include <vector>

namespace sdgreen {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

/// Closed halfplane {p : n.p <= c}.
struct Halfplane {
    Vec2 n;
    double c = 0.0;
    bool contains(Point p) const { return n.x * p.x + n.y * p.y <= c; }
};

/// Sutherland-Hodgman clip of a convex polygon against one halfplane.
std::vector<Point> clip_polygon(const std::vector<Point>& poly, const Halfplane& h);

/// Shoelace area (positive for counter-clockwise vertex order).
double polygon_area(const std::vector<Point>& poly);

inline double triangle_area(Point a, Point b, Point c) {
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

}  // namespace sdgreen
