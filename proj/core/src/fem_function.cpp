#include "sdgreen/fem_function.hpp"

#include <cmath>
#include <stdexcept>

#include "sdgreen/rng.hpp"

namespace sdgreen {

TriGeometry make_tri_geometry(Point p0, Point p1, Point p2) {
    TriGeometry g;
    g.p = {p0, p1, p2};
    const double two_a = (g.p[1].x - g.p[0].x) * (g.p[2].y - g.p[0].y) -
                         (g.p[2].x - g.p[0].x) * (g.p[1].y - g.p[0].y);
    if (two_a <= 0.0) throw std::runtime_error("degenerate or misoriented triangle");
    g.area = 0.5 * two_a;
    g.grad[0] = {(g.p[1].y - g.p[2].y) / two_a, (g.p[2].x - g.p[1].x) / two_a};
    g.grad[1] = {(g.p[2].y - g.p[0].y) / two_a, (g.p[0].x - g.p[2].x) / two_a};
    g.grad[2] = {(g.p[0].y - g.p[1].y) / two_a, (g.p[1].x - g.p[0].x) / two_a};
    return g;
}

TriGeometry tri_geometry(const ShishkinMesh& mesh, const Triangle& t) {
    const auto [i0, j0] = mesh.node_ij(t.v[0]);
    const auto [i1, j1] = mesh.node_ij(t.v[1]);
    const auto [i2, j2] = mesh.node_ij(t.v[2]);
    return make_tri_geometry(mesh.node(i0, j0), mesh.node(i1, j1), mesh.node(i2, j2));
}

double FemFunction::value(Point p) const {
    const auto loc = mesh->locate(p);
    const Triangle& t = mesh->triangles[loc.tri];
    return loc.bary[0] * coeffs[t.v[0]] + loc.bary[1] * coeffs[t.v[1]] +
           loc.bary[2] * coeffs[t.v[2]];
}

double FemFunction::value_on_tri(int tri, Point p) const {
    const Triangle& t = mesh->triangles[tri];
    const TriGeometry g = tri_geometry(*mesh, t);
    // linear: value at p0 plus constant gradient times offset
    const Vec2 gr = gradient(tri);
    return coeffs[t.v[0]] + dot(gr, p - g.p[0]);
}

Vec2 FemFunction::gradient(int tri) const {
    const Triangle& t = mesh->triangles[tri];
    const TriGeometry g = tri_geometry(*mesh, t);
    Vec2 s{0.0, 0.0};
    for (int k = 0; k < 3; ++k) s = s + coeffs[t.v[k]] * g.grad[k];
    return s;
}

FemFunction::TriLinear FemFunction::linear_on_tri(int tri) const {
    const Triangle& t = mesh->triangles[tri];
    const TriGeometry g = tri_geometry(*mesh, t);
    TriLinear lin;
    lin.p0 = g.p[0];
    lin.v0 = coeffs[t.v[0]];
    lin.grad = {0.0, 0.0};
    for (int k = 0; k < 3; ++k) lin.grad = lin.grad + coeffs[t.v[k]] * g.grad[k];
    return lin;
}

bool FemFunction::boundary_is_zero(double tol) const {
    const int n = mesh->n;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            if (mesh->is_boundary(i, j) && std::abs(coeffs[mesh->node_id(i, j)]) > tol)
                return false;
    return true;
}

std::vector<double> FemFunction::interior() const {
    const int n = mesh->n;
    std::vector<double> v(static_cast<std::size_t>(mesh->num_interior()));
    for (int j = 1; j < n; ++j)
        for (int i = 1; i < n; ++i) v[mesh->interior_id(i, j)] = coeffs[mesh->node_id(i, j)];
    return v;
}

void FemFunction::set_interior(const std::vector<double>& v) {
    const int n = mesh->n;
    if (static_cast<int>(v.size()) != mesh->num_interior())
        throw std::invalid_argument("interior vector size mismatch");
    for (int j = 1; j < n; ++j)
        for (int i = 1; i < n; ++i) coeffs[mesh->node_id(i, j)] = v[mesh->interior_id(i, j)];
}

FemFunction nodal_interpolant(const std::function<double(double, double)>& f,
                              const ShishkinMesh& mesh) {
    FemFunction u(mesh);
    for (int j = 0; j <= mesh.n; ++j)
        for (int i = 0; i <= mesh.n; ++i)
            u.coeffs[mesh.node_id(i, j)] = f(mesh.x[i], mesh.y[j]);
    return u;
}

FemFunction random_vn(const ShishkinMesh& mesh, Rng& rng) {
    FemFunction v(mesh);
    for (int j = 1; j < mesh.n; ++j)
        for (int i = 1; i < mesh.n; ++i) v.at_node(i, j) = rng.uniform_pm1();
    return v;
}

}  // namespace sdgreen
