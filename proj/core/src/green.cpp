#include "sdgreen/green.hpp"

#include <cmath>
#include <stdexcept>

namespace sdgreen {

GreenFunction compute_green(const SdfemSystem& system, int star_i, int star_j) {
    const ShishkinMesh& mesh = *system.mesh;
    const int iid = mesh.interior_id(star_i, star_j);
    if (iid < 0) throw std::invalid_argument("x* must be an interior mesh node");
    if (!system.factorized()) throw std::logic_error("system not factorized");

    std::vector<double> e(static_cast<std::size_t>(mesh.num_interior()), 0.0);
    e[iid] = 1.0;
    const std::vector<double> ghat = system.solve_transpose(e);

    GreenFunction gf;
    gf.g = FemFunction(mesh);
    gf.g.set_interior(ghat);
    gf.star_i = star_i;
    gf.star_j = star_j;
    gf.x_star = mesh.node(star_i, star_j);
    gf.solve_residual = system.last_residual();
    return gf;
}

TriFilter region_filter(Region r) {
    return [r](const Triangle& t) { return t.region == r; };
}

WeightedNormParts weighted_norm_parts(const FemFunction& g, const WeightParams& wp,
                                      const Directions& dirs, const ProblemConfig& cfg,
                                      const TriFilter& filter, const TriQuadRule& rule) {
    const ShishkinMesh& mesh = *g.mesh;
    WeightedNormParts parts;
    for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        const Triangle& tri = mesh.triangles[ti];
        if (filter && !filter(tri)) continue;
        const TriGeometry geo = tri_geometry(mesh, tri);
        const Vec2 gr = g.gradient(static_cast<int>(ti));
        const double gb = dot(gr, dirs.beta);
        const double ge = dot(gr, dirs.eta);
        const double delta = delta_on_triangle(tri.region, cfg);
        const double g0 = g.coeffs[tri.v[0]];

        double eb = 0.0, ee = 0.0, cv = 0.0, re = 0.0, st = 0.0;
        for (const auto& q : rule.nodes) {
            const Point p{q.l0 * geo.p[0].x + q.l1 * geo.p[1].x + q.l2 * geo.p[2].x,
                          q.l0 * geo.p[0].y + q.l1 * geo.p[1].y + q.l2 * geo.p[2].y};
            const WeightValues w = weight(p, wp, dirs);
            const double gv = g0 + dot(gr, p - geo.p[0]);
            eb += q.w * w.omega_inv * gb * gb;
            ee += q.w * w.omega_inv * ge * ge;
            cv += q.w * w.omega_inv_beta * gv * gv;
            re += q.w * w.omega_inv * gv * gv;
            st += q.w * w.omega_inv * gb * gb;
        }
        const double a = geo.area;
        parts.eps_beta += cfg.epsilon * a * eb;
        parts.eps_eta += cfg.epsilon * a * ee;
        parts.convection += 0.5 * dirs.b_mag * a * cv;
        parts.reaction += cfg.c * a * re;
        parts.stabilization += dirs.b_mag * dirs.b_mag * delta * a * st;
    }
    parts.total_sq = parts.eps_beta + parts.eps_eta + parts.convection + parts.reaction +
                     parts.stabilization;
    parts.norm = std::sqrt(parts.total_sq);
    return parts;
}

double weighted_norm(const FemFunction& g, const WeightParams& wp, const Directions& dirs,
                     const ProblemConfig& cfg, const TriFilter& filter) {
    return weighted_norm_parts(g, wp, dirs, cfg, filter).norm;
}

bool omega0_contains(Point p, const WeightParams& wp, const Directions& dirs, int n) {
    const double ln_n = std::log(static_cast<double>(n));
    const Vec2 d = {p.x - wp.x_star.x, p.y - wp.x_star.y};
    return dot(d, dirs.beta) <= wp.big_k * wp.sigma_beta * ln_n &&
           std::abs(dot(d, dirs.eta)) <= wp.big_k * wp.sigma_eta * ln_n;
}

Omega0Cover omega0_prime(const ShishkinMesh& mesh, const WeightParams& wp,
                         const Directions& dirs) {
    const double ln_n = std::log(static_cast<double>(mesh.n));
    const double cb = wp.big_k * wp.sigma_beta * ln_n + dot({wp.x_star.x, wp.x_star.y}, dirs.beta);
    const double ce = wp.big_k * wp.sigma_eta * ln_n;
    const double oe = dot({wp.x_star.x, wp.x_star.y}, dirs.eta);
    const Halfplane h1{dirs.beta, cb};
    const Halfplane h2{dirs.eta, ce + oe};
    const Halfplane h3{{-dirs.eta.x, -dirs.eta.y}, ce - oe};

    Omega0Cover cover;
    for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        const Triangle& tri = mesh.triangles[ti];
        const TriGeometry geo = tri_geometry(mesh, tri);
        std::vector<Point> poly{geo.p[0], geo.p[1], geo.p[2]};
        poly = clip_polygon(poly, h1);
        poly = clip_polygon(poly, h2);
        poly = clip_polygon(poly, h3);
        const double inter = polygon_area(poly);
        if (inter > 1e-12 * geo.area) {
            cover.tri_indices.push_back(static_cast<int>(ti));
            cover.measure += geo.area;
        }
    }
    return cover;
}

}  // namespace sdgreen
