#include "sdgreen/quadrature.hpp"

#include <cmath>

namespace sdgreen {

namespace {

void push_center(TriQuadRule& r, double w) {
    r.nodes.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, w});
}

// Orbit (a, b, b) and permutations.
void push_3(TriQuadRule& r, double a, double w) {
    const double b = 0.5 * (1.0 - a);
    r.nodes.push_back({a, b, b, w});
    r.nodes.push_back({b, a, b, w});
    r.nodes.push_back({b, b, a, w});
}

// Orbit (a, b, c) and all six permutations.
void push_6(TriQuadRule& r, double a, double b, double w) {
    const double c = 1.0 - a - b;
    r.nodes.push_back({a, b, c, w});
    r.nodes.push_back({a, c, b, w});
    r.nodes.push_back({b, a, c, w});
    r.nodes.push_back({b, c, a, w});
    r.nodes.push_back({c, a, b, w});
    r.nodes.push_back({c, b, a, w});
}

TriQuadRule make_degree5() {
    // Classic 7-point rule: centroid plus two 3-orbits with repeated
    // coordinate (6 -/+ sqrt(15))/21.
    TriQuadRule r;
    r.degree = 5;
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0;
    const double w1 = (155.0 - s15) / 1200.0;
    const double a2 = (6.0 + s15) / 21.0;
    const double w2 = (155.0 + s15) / 1200.0;
    push_center(r, 9.0 / 40.0);
    push_3(r, 1.0 - 2.0 * a1, w1);
    push_3(r, 1.0 - 2.0 * a2, w2);
    return r;
}

TriQuadRule make_degree8() {
    // 16-point rule, exact for polynomials of total degree <= 8.
    TriQuadRule r;
    r.degree = 8;
    push_center(r, 0.144315607677787);
    push_3(r, 0.081414823414554, 0.095091634413923);
    push_3(r, 0.658861384496480, 0.103217370534718);
    push_3(r, 0.898905543365938, 0.032458497623198);
    push_6(r, 0.008394777409958, 0.263112829634638, 0.027230314174435);
    return r;
}

}  // namespace

const TriQuadRule& TriQuadRule::degree5() {
    static const TriQuadRule r = make_degree5();
    return r;
}

const TriQuadRule& TriQuadRule::degree8() {
    static const TriQuadRule r = make_degree8();
    return r;
}

}  // namespace sdgreen
