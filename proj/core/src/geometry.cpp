#include "sdgreen/geometry.hpp"

namespace sdgreen {

std::vector<Point> clip_polygon(const std::vector<Point>& poly, const Halfplane& h) {
    std::vector<Point> out;
    const std::size_t m = poly.size();
    if (m == 0) return out;
    out.reserve(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % m];
        const double da = h.n.x * a.x + h.n.y * a.y - h.c;
        const double db = h.n.x * b.x + h.n.y * b.y - h.c;
        if (da <= 0.0) out.push_back(a);
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db <= 0.0)) {
            const double t = da / (da - db);
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return out;
}

double polygon_area(const std::vector<Point>& poly) {
    const std::size_t m = poly.size();
    if (m < 3) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % m];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * s;
}

}  // namespace sdgreen
