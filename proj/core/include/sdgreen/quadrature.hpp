#pragma once
#include <array>
#include <vector>

#include "sdgreen/geometry.hpp"

namespace sdgreen {

/// Symmetric Gauss rule on a triangle, points in barycentric coordinates,
/// weights normalized to sum to 1 (i.e. relative to the triangle area).
struct TriQuadRule {
    struct Node {
        double l0, l1, l2, w;
    };
    std::vector<Node> nodes;
    int degree = 0;

    static const TriQuadRule& degree5();  // 7 points
    static const TriQuadRule& degree8();  // 16 points

    /// integral over the triangle (p0,p1,p2) of f, with |area| supplied.
    template <class F>
    double integrate(Point p0, Point p1, Point p2, double area, F&& f) const {
        double s = 0.0;
        for (const Node& q : nodes) {
            const Point p{q.l0 * p0.x + q.l1 * p1.x + q.l2 * p2.x,
                          q.l0 * p0.y + q.l1 * p1.y + q.l2 * p2.y};
            s += q.w * f(p);
        }
        return s * area;
    }
};

}  // namespace sdgreen
