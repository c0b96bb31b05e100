#include <doctest.h>

#include <cmath>

#include "sdgreen/assembly.hpp"
#include "sdgreen/diagnostics.hpp"
#include "sdgreen/rng.hpp"
#include "support/oracles.hpp"

using namespace sdgreen;

namespace {

ProblemConfig cfg_n(int n, double eps = 1e-2) {
    ProblemConfig cfg;
    cfg.n = n;
    cfg.epsilon = eps;
    cfg.b1 = 2.0;
    cfg.b2 = 3.0;
    cfg.c = 1.0;
    return cfg;
}

}  // namespace

TEST_CASE("stabilization parameter per region") {
    ProblemConfig cfg = cfg_n(64);
    cfg.c_star = 0.5;
    CHECK(delta_on_triangle(Region::S, cfg) == doctest::Approx(0.0078125).epsilon(1e-15));
    CHECK(delta_on_triangle(Region::X, cfg) == 0.0);
    CHECK(delta_on_triangle(Region::Y, cfg) == 0.0);
    CHECK(delta_on_triangle(Region::XY, cfg) == 0.0);
}

TEST_CASE("element matrices") {
    const double h = 0.37;
    const TriGeometry g = make_tri_geometry({0, 0}, {h, 0}, {0, h});

    SUBCASE("stiffness block on a right triangle") {
        const PdeCoefficients pc{1.0, 0.0, 0.0, 0.0};
        const LocalMatrices lm = local_matrices(g, pc, 0.0);
        const double expect[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK(lm.galerkin[a][b] == doctest::Approx(expect[a][b]).epsilon(1e-14));
    }
    SUBCASE("stiffness matches the degree-8 quadrature of grad(phi_i).grad(phi_j)") {
        const PdeCoefficients pc{1.0, 0.0, 0.0, 0.0};
        const LocalMatrices lm = local_matrices(g, pc, 0.0);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const double q = TriQuadRule::degree8().integrate(
                    g.p[0], g.p[1], g.p[2], g.area,
                    [&](Point) { return dot(g.grad[a], g.grad[b]); });
                CHECK(lm.galerkin[a][b] == doctest::Approx(q).epsilon(1e-13));
            }
    }
    SUBCASE("convection block annihilates constants in the trial slot") {
        const PdeCoefficients pc{0.0, 1.0, 0.0, 0.0};
        const LocalMatrices lm = local_matrices(g, pc, 0.0);
        for (int a = 0; a < 3; ++a) {
            const double row_on_ones =
                lm.galerkin[a][0] + lm.galerkin[a][1] + lm.galerkin[a][2];
            CHECK(row_on_ones == doctest::Approx(0.0).epsilon(1e-16));
        }
    }
    SUBCASE("mass block applied to the constant vector") {
        const PdeCoefficients pc{0.0, 0.0, 0.0, 1.0};
        const LocalMatrices lm = local_matrices(g, pc, 0.0);
        for (int a = 0; a < 3; ++a) {
            const double s = lm.galerkin[a][0] + lm.galerkin[a][1] + lm.galerkin[a][2];
            CHECK(s == doctest::Approx(g.area / 3.0).epsilon(1e-14));
        }
    }
    SUBCASE("stabilization block against quadrature") {
        const PdeCoefficients pc{0.3, 2.0, 3.0, 1.0};
        const double delta = 0.05;
        const LocalMatrices lm = local_matrices(g, pc, delta);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                std::array<double, 3> db{};
                for (int k = 0; k < 3; ++k)
                    db[k] = pc.b1 * g.grad[k].x + pc.b2 * g.grad[k].y;
                const double q = TriQuadRule::degree5().integrate(
                    g.p[0], g.p[1], g.p[2], g.area, [&](Point p) {
                        // P1 basis via barycentric of the right triangle
                        const double l1 = p.x / h, l2 = p.y / h, l0 = 1.0 - l1 - l2;
                        const double phi_b = b == 0 ? l0 : (b == 1 ? l1 : l2);
                        return delta * (db[b] + pc.c * phi_b) * db[a];
                    });
                CHECK(lm.stabilization[a][b] == doctest::Approx(q).epsilon(1e-13));
            }
    }
    SUBCASE("degenerate triangle rejected") {
        CHECK_THROWS(make_tri_geometry({0, 0}, {1, 0}, {2, 0}));
    }
}

TEST_CASE("system dimension") {
    const ProblemConfig cfg = cfg_n(8);
    const ShishkinMesh mesh = build_mesh(cfg);
    const SdfemSystem sys = assemble_system(mesh, cfg);
    CHECK(sys.dim() == 49);
}

TEST_CASE("banded scatter equals the dense oracle assembly") {
    const ProblemConfig cfg = cfg_n(8, 1e-3);
    const ShishkinMesh mesh = build_mesh(cfg);
    const SdfemSystem sys = assemble_system(mesh, cfg);
    const auto dense = oracles::dense_assemble(mesh, PdeCoefficients::from(cfg),
                                               cfg.effective_c_star());
    const int dim = sys.dim();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            CHECK(sys.matrix.get(i, j) ==
                  doctest::Approx(dense[std::size_t(i) * dim + j]).epsilon(1e-14));
}

TEST_CASE("matrix bilinear form is exact against quadrature") {
    const ProblemConfig cfg = cfg_n(8, 0.03);
    const ShishkinMesh mesh = build_mesh(cfg);
    const SdfemSystem sys = assemble_system(mesh, cfg);
    const Directions dirs = Directions::from(cfg);
    Rng rng(kDefaultSeed);
    // includes the named case v = interpolant of x(1-x)y(1-y)
    FemFunction v = nodal_interpolant(
        [](double x, double y) { return x * (1.0 - x) * y * (1.0 - y); }, mesh);
    for (int t = 0; t < 5; ++t) {
        const FemFunction w = random_vn(mesh, rng);
        FemFieldView vf(v, dirs);
        const double via_matrix = sys.a_sd(v, w);
        const double via_quad = asd_general(vf, w, cfg);
        const double via_quad8 = asd_general(vf, w, cfg, TriQuadRule::degree8());
        CHECK(via_matrix == doctest::Approx(via_quad).epsilon(1e-12));
        CHECK(via_matrix == doctest::Approx(via_quad8).epsilon(1e-12));
        v = random_vn(mesh, rng);
    }
}

TEST_CASE("splitting structure: symmetric part and skew convection") {
    ProblemConfig cfg = cfg_n(8, 0.05);
    cfg.c_star = 0.0;  // pure Galerkin
    const ShishkinMesh mesh = build_mesh(cfg);
    const SdfemSystem sys = assemble_system(mesh, cfg);
    const int dim = sys.dim();

    const auto conv =
        oracles::dense_assemble(mesh, PdeCoefficients{0.0, cfg.b1, cfg.b2, 0.0}, 0.0);
    const auto symm =
        oracles::dense_assemble(mesh, PdeCoefficients{cfg.epsilon, 0.0, 0.0, cfg.c}, 0.0);

    double scale = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) scale = std::max(scale, std::abs(sys.matrix.get(i, j)));

    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double aij = sys.matrix.get(i, j);
            const double aji = sys.matrix.get(j, i);
            // (A + A^T)/2 is the diffusion + reaction part
            CHECK(0.5 * (aij + aji) ==
                  doctest::Approx(symm[std::size_t(i) * dim + j]).epsilon(1e-12).scale(scale));
            // convection alone is skew
            CHECK(conv[std::size_t(i) * dim + j] + conv[std::size_t(j) * dim + i] ==
                  doctest::Approx(0.0).scale(scale));
        }

    // quadratic form of the skew part vanishes
    Rng rng(kDefaultSeed);
    for (int t = 0; t < 10; ++t) {
        const FemFunction v = random_vn(mesh, rng);
        const auto vi = v.interior();
        double q = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) q += vi[i] * conv[std::size_t(i) * dim + j] * vi[j];
        CHECK(q == doctest::Approx(0.0).scale(scale * dim));
    }
}

TEST_CASE("load vector") {
    const ProblemConfig cfg = cfg_n(8, 1e-2);
    const ShishkinMesh mesh = build_mesh(cfg);

    SUBCASE("zero load gives the zero vector") {
        const auto rhs = assemble_rhs(mesh, cfg, [](double, double) { return 0.0; });
        for (double v : rhs) CHECK(v == 0.0);
    }
    SUBCASE("unit load, no stabilization: sum of |K|/3 over incident triangles") {
        ProblemConfig cfg0 = cfg;
        cfg0.c_star = 0.0;
        const auto rhs = assemble_rhs(mesh, cfg0, [](double, double) { return 1.0; });
        std::vector<double> expect(rhs.size(), 0.0);
        for (const Triangle& t : mesh.triangles)
            for (int k = 0; k < 3; ++k) {
                const auto [i, j] = mesh.node_ij(t.v[k]);
                const int iid = mesh.interior_id(i, j);
                if (iid >= 0) expect[iid] += mesh.tri_area(t) / 3.0;
            }
        for (std::size_t i = 0; i < rhs.size(); ++i)
            CHECK(rhs[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    }
    SUBCASE("smooth load against the adaptive quadrature oracle") {
        auto f = [](double x, double y) { return std::sin(2.0 * x) * std::exp(y); };
        const auto rhs = assemble_rhs(mesh, cfg, f);
        // check a handful of interior nodes
        for (int idx : {0, 11, 24, 40}) {
            const auto [i, j] = mesh.interior_ij(idx);
            double expect = 0.0;
            for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
                const Triangle& t = mesh.triangles[ti];
                bool touches = false;
                int local = -1;
                for (int k = 0; k < 3; ++k)
                    if (t.v[k] == mesh.node_id(i, j)) {
                        touches = true;
                        local = k;
                    }
                if (!touches) continue;
                const TriGeometry g = tri_geometry(mesh, t);
                const double delta = delta_on_triangle(t.region, cfg);
                const double db = cfg.b1 * g.grad[local].x + cfg.b2 * g.grad[local].y;
                // P1 basis value via barycentric coordinates of the triangle
                expect += oracles::adaptive_tri(
                    g.p[0], g.p[1], g.p[2],
                    [&](Point p) {
                        const double l1 =
                            triangle_area(g.p[0], p, g.p[2]) / triangle_area(g.p[0], g.p[1], g.p[2]);
                        const double l2 =
                            triangle_area(g.p[0], g.p[1], p) / triangle_area(g.p[0], g.p[1], g.p[2]);
                        const double l0 = 1.0 - l1 - l2;
                        const double phi = local == 0 ? l0 : (local == 1 ? l1 : l2);
                        return f(p.x, p.y) * (phi + delta * db);
                    },
                    1e-12);
            }
            CHECK(rhs[idx] == doctest::Approx(expect).epsilon(1e-8));
        }
    }
}

TEST_CASE("evaluation and interpolation") {
    const ProblemConfig cfg = cfg_n(8, 1e-2);
    const ShishkinMesh mesh = build_mesh(cfg);

    SUBCASE("nodal basis reproduces coefficients at nodes") {
        Rng rng(kDefaultSeed);
        FemFunction u(mesh);
        for (double& c : u.coeffs) c = rng.uniform_pm1();
        for (int j = 0; j <= mesh.n; ++j)
            for (int i = 0; i <= mesh.n; ++i)
                CHECK(u.value(mesh.node(i, j)) ==
                      doctest::Approx(u.at_node(i, j)).epsilon(1e-12));
    }
    SUBCASE("centroid value is the vertex mean") {
        Rng rng(3);
        FemFunction u(mesh);
        for (double& c : u.coeffs) c = rng.uniform_pm1();
        for (int ti : {0, 5, 77, 100}) {
            const Triangle& t = mesh.triangles[ti];
            const TriGeometry g = tri_geometry(mesh, t);
            const Point centroid{(g.p[0].x + g.p[1].x + g.p[2].x) / 3.0,
                                 (g.p[0].y + g.p[1].y + g.p[2].y) / 3.0};
            const double mean =
                (u.coeffs[t.v[0]] + u.coeffs[t.v[1]] + u.coeffs[t.v[2]]) / 3.0;
            CHECK(u.value(centroid) == doctest::Approx(mean).epsilon(1e-13));
        }
    }
    SUBCASE("interpolation reproduces linear fields everywhere") {
        auto f = [](double x, double y) { return 3.0 * x - 2.0 * y + 0.5; };
        const FemFunction u = nodal_interpolant(f, mesh);
        Rng rng(kDefaultSeed);
        for (int t = 0; t < 200; ++t) {
            const Point p = rng.point_in_unit_square();
            CHECK(u.value(p) == doctest::Approx(f(p.x, p.y)).epsilon(1e-13));
        }
    }
    SUBCASE("constant interpolates to constant") {
        const FemFunction u = nodal_interpolant([](double, double) { return 4.5; }, mesh);
        for (double c : u.coeffs) CHECK(c == 4.5);
    }
    SUBCASE("outside the domain is rejected") {
        FemFunction u(mesh);
        CHECK_THROWS_AS(u.value({1.2, 0.5}), std::domain_error);
    }
}

TEST_CASE("energy norm") {
    SUBCASE("zero and homogeneity") {
        const ProblemConfig cfg = cfg_n(8, 1e-2);
        const ShishkinMesh mesh = build_mesh(cfg);
        FemFunction u(mesh);
        CHECK(sd_norm(u, cfg) == 0.0);
        Rng rng(kDefaultSeed);
        u = random_vn(mesh, rng);
        FemFunction u2 = u;
        for (double& c : u2.coeffs) c *= 2.0;
        CHECK(sd_norm(u2, cfg) == doctest::Approx(2.0 * sd_norm(u, cfg)).epsilon(1e-14));
    }
    SUBCASE("independent of the reaction coefficient") {
        ProblemConfig cfg = cfg_n(8, 1e-2);
        const ShishkinMesh mesh = build_mesh(cfg);
        Rng rng(11);
        const FemFunction u = random_vn(mesh, rng);
        const double n1 = sd_norm(u, cfg);
        cfg.c = 7.0;
        CHECK(sd_norm(u, cfg) == n1);
    }
    SUBCASE("seminorm and L2 parts converge to the analytic values") {
        // interpolant of sin(pi x) sin(pi y) on the uniform (clamped) mesh:
        // eps |u|_1^2 -> pi^2/2 and ||u||^2 -> 1/4 as N grows
        ProblemConfig cfg = cfg_n(64, 1.0);
        cfg.c_star = 0.0;
        const ShishkinMesh mesh = build_mesh(cfg);
        const FemFunction u = nodal_interpolant(
            [](double x, double y) { return std::sin(M_PI * x) * std::sin(M_PI * y); }, mesh);
        double grad_sq = 0.0, l2_sq = 0.0;
        for (std::size_t ti = 0; ti < mesh.triangles.size(); ++ti) {
            const Triangle& t = mesh.triangles[ti];
            const TriGeometry g = tri_geometry(mesh, t);
            const Vec2 gr = u.gradient(static_cast<int>(ti));
            grad_sq += g.area * dot(gr, gr);
            const double u0 = u.coeffs[t.v[0]], u1 = u.coeffs[t.v[1]], u2 = u.coeffs[t.v[2]];
            l2_sq += g.area / 6.0 *
                     (u0 * u0 + u1 * u1 + u2 * u2 + u0 * u1 + u0 * u2 + u1 * u2);
        }
        CHECK(grad_sq == doctest::Approx(M_PI * M_PI / 2.0).epsilon(2e-3));
        CHECK(l2_sq == doctest::Approx(0.25).epsilon(2e-3));
        // sd_norm^2 must equal eps*grad_sq + l2_sq here (no stabilization)
        const double nrm = sd_norm(u, cfg);
        CHECK(nrm * nrm == doctest::Approx(cfg.epsilon * grad_sq + l2_sq).epsilon(1e-12));
    }
}

TEST_CASE("solve and adjoint solve against the dense oracle") {
    const ProblemConfig cfg = cfg_n(8, 1e-3);
    const ShishkinMesh mesh = build_mesh(cfg);
    SdfemSystem sys = assemble_system(mesh, cfg);
    sys.factorize();
    const int dim = sys.dim();

    const auto dense = oracles::dense_assemble(mesh, PdeCoefficients::from(cfg),
                                               cfg.effective_c_star());
    const auto dense_adj = oracles::dense_assemble(mesh, PdeCoefficients::from(cfg),
                                                   cfg.effective_c_star(), /*swap=*/true);
    // the role-swapped assembly is exactly the transpose
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            CHECK(dense[std::size_t(i) * dim + j] == dense_adj[std::size_t(j) * dim + i]);

    std::vector<double> e(dim, 0.0);
    e[dim / 2] = 1.0;
    const auto x = sys.solve_transpose(e);
    const auto lu_adj = oracles::DenseLU::factor(dense_adj, dim);
    const auto x_oracle = lu_adj.solve(e);
    for (int i = 0; i < dim; ++i) CHECK(x[i] == doctest::Approx(x_oracle[i]).epsilon(1e-10));
    CHECK(sys.last_residual() <= 1e-10);
}
