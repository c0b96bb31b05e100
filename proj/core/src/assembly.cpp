#include "sdgreen/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace sdgreen {

double delta_on_triangle(Region region, const ProblemConfig& cfg) {
    return region == Region::S ? cfg.effective_c_star() / cfg.n : 0.0;
}

LocalMatrices local_matrices(const TriGeometry& g, const PdeCoefficients& pc, double delta) {
    if (!(g.area > 0.0)) throw std::invalid_argument("degenerate triangle");
    LocalMatrices lm;
    std::array<double, 3> db{};  // b.grad(phi_k), constant on the triangle
    for (int k = 0; k < 3; ++k) db[k] = pc.b1 * g.grad[k].x + pc.b2 * g.grad[k].y;
    const double a = g.area;
    for (int t = 0; t < 3; ++t) {      // test
        for (int s = 0; s < 3; ++s) {  // trial
            const double stiff = pc.eps * a * dot(g.grad[s], g.grad[t]);
            const double conv = db[s] * a / 3.0;
            const double mass = pc.c * a / 12.0 * (s == t ? 2.0 : 1.0);
            lm.galerkin[t][s] = stiff + conv + mass;
            lm.stabilization[t][s] = delta * a * (db[s] * db[t] + pc.c * db[t] / 3.0);
        }
    }
    return lm;
}

SdfemSystem assemble_system(const ShishkinMesh& mesh, const ProblemConfig& cfg) {
    cfg.validate();
    SdfemSystem sys;
    sys.mesh = &mesh;
    sys.cfg = cfg;
    const int bw = mesh.n - 1;  // 7-point stencil: farthest coupling is one mesh row
    sys.matrix = BandedMatrix(mesh.num_interior(), bw, bw);
    const PdeCoefficients pc = PdeCoefficients::from(cfg);

    for (const Triangle& tri : mesh.triangles) {
        const TriGeometry g = tri_geometry(mesh, tri);
        const LocalMatrices lm = local_matrices(g, pc, delta_on_triangle(tri.region, cfg));
        std::array<int, 3> iid{};
        for (int k = 0; k < 3; ++k) {
            const auto [i, j] = mesh.node_ij(tri.v[k]);
            iid[k] = mesh.interior_id(i, j);
        }
        for (int t = 0; t < 3; ++t) {
            if (iid[t] < 0) continue;
            for (int s = 0; s < 3; ++s) {
                if (iid[s] < 0) continue;
                sys.matrix.add(iid[t], iid[s], lm.galerkin[t][s] + lm.stabilization[t][s]);
            }
        }
    }
    return sys;
}

void SdfemSystem::factorize() {
    if (!lu_) lu_ = BandedLU::factorize(matrix);
}

namespace {

double rel_residual(const BandedMatrix& a, const std::vector<double>& x,
                    const std::vector<double>& rhs, bool transpose) {
    const std::vector<double> ax = transpose ? a.apply_transpose(x) : a.apply(x);
    double rn = 0.0, bn = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        const double r = rhs[i] - ax[i];
        rn += r * r;
        bn += rhs[i] * rhs[i];
    }
    return bn > 0.0 ? std::sqrt(rn / bn) : std::sqrt(rn);
}

}  // namespace

std::vector<double> SdfemSystem::solve(const std::vector<double>& rhs) const {
    if (!lu_) throw std::logic_error("system not factorized");
    std::vector<double> x = lu_->solve(rhs);
    // one refinement step
    std::vector<double> ax = matrix.apply(x);
    std::vector<double> r(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) r[i] = rhs[i] - ax[i];
    const std::vector<double> dx = lu_->solve(r);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
    last_residual_ = rel_residual(matrix, x, rhs, false);
    if (!(last_residual_ <= 1e-10))
        throw std::runtime_error("banded solve residual " + std::to_string(last_residual_) +
                                 " exceeds 1e-10");
    return x;
}

std::vector<double> SdfemSystem::solve_transpose(const std::vector<double>& rhs) const {
    if (!lu_) throw std::logic_error("system not factorized");
    std::vector<double> x = lu_->solve_transpose(rhs);
    std::vector<double> ax = matrix.apply_transpose(x);
    std::vector<double> r(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i) r[i] = rhs[i] - ax[i];
    const std::vector<double> dx = lu_->solve_transpose(r);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
    last_residual_ = rel_residual(matrix, x, rhs, true);
    if (!(last_residual_ <= 1e-10))
        throw std::runtime_error("banded transpose solve residual " +
                                 std::to_string(last_residual_) + " exceeds 1e-10");
    return x;
}

double SdfemSystem::a_sd(const FemFunction& trial, const FemFunction& test) const {
    if (!trial.boundary_is_zero() || !test.boundary_is_zero())
        throw std::invalid_argument("a_sd via matrix requires homogeneous boundary values");
    const std::vector<double> u = trial.interior();
    const std::vector<double> au = matrix.apply(u);
    const std::vector<double> w = test.interior();
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * au[i];
    return s;
}

void SdfemSystem::dump_matrix(std::ostream& os) const {
    char buf[96];
    const int n = matrix.dim();
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - matrix.upper_bandwidth());
             j <= std::min(n - 1, i + matrix.lower_bandwidth()); ++j) {
            const double v = matrix.get(i, j);
            if (v != 0.0) {
                std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, j, v);
                os << buf;
            }
        }
}

std::vector<double> assemble_rhs(const ShishkinMesh& mesh, const ProblemConfig& cfg,
                                 const std::function<double(double, double)>& f) {
    const TriQuadRule& rule = TriQuadRule::degree5();
    std::vector<double> rhs(static_cast<std::size_t>(mesh.num_interior()), 0.0);
    for (const Triangle& tri : mesh.triangles) {
        const TriGeometry g = tri_geometry(mesh, tri);
        const double delta = delta_on_triangle(tri.region, cfg);
        std::array<double, 3> db{};
        for (int k = 0; k < 3; ++k) db[k] = cfg.b1 * g.grad[k].x + cfg.b2 * g.grad[k].y;
        for (const auto& q : rule.nodes) {
            const Point p{q.l0 * g.p[0].x + q.l1 * g.p[1].x + q.l2 * g.p[2].x,
                          q.l0 * g.p[0].y + q.l1 * g.p[1].y + q.l2 * g.p[2].y};
            const double fv = f(p.x, p.y);
            const std::array<double, 3> bary{q.l0, q.l1, q.l2};
            for (int k = 0; k < 3; ++k) {
                const auto [i, j] = mesh.node_ij(tri.v[k]);
                const int iid = mesh.interior_id(i, j);
                if (iid < 0) continue;
                rhs[iid] += q.w * g.area * fv * (bary[k] + delta * db[k]);
            }
        }
    }
    return rhs;
}

FemFunction solve_fem(SdfemSystem& system, const std::function<double(double, double)>& f) {
    system.factorize();
    const std::vector<double> rhs = assemble_rhs(*system.mesh, system.cfg, f);
    const std::vector<double> x = system.solve(rhs);
    FemFunction u(*system.mesh);
    u.set_interior(x);
    return u;
}

double sd_norm(const FemFunction& v, const ProblemConfig& cfg) {
    const ShishkinMesh& mesh = *v.mesh;
    double sum = 0.0;
    for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
        const Triangle& tri = mesh.triangles[ti];
        const TriGeometry g = tri_geometry(mesh, tri);
        const Vec2 gr = v.gradient(static_cast<int>(ti));
        const double u0 = v.coeffs[tri.v[0]], u1 = v.coeffs[tri.v[1]], u2 = v.coeffs[tri.v[2]];
        // exact mass integral of v^2 on the triangle
        const double l2 =
            g.area / 6.0 * (u0 * u0 + u1 * u1 + u2 * u2 + u0 * u1 + u0 * u2 + u1 * u2);
        const double bg = cfg.b1 * gr.x + cfg.b2 * gr.y;
        const double delta = delta_on_triangle(tri.region, cfg);
        sum += cfg.epsilon * g.area * dot(gr, gr) + l2 + delta * g.area * bg * bg;
    }
    return std::sqrt(sum);
}

}  // namespace sdgreen
