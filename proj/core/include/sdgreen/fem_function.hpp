#pragma once
#include <functional>
#include <vector>

#include "sdgreen/geometry.hpp"
#include "sdgreen/mesh.hpp"

namespace sdgreen {

/// Geometry of one triangle needed by P1 element formulas: vertex
/// coordinates, area, and the (constant) basis gradients.
struct TriGeometry {
    std::array<Point, 3> p;
    double area = 0.0;
    std::array<Vec2, 3> grad;
};

TriGeometry make_tri_geometry(Point p0, Point p1, Point p2);
TriGeometry tri_geometry(const ShishkinMesh& mesh, const Triangle& t);

/// Continuous piecewise-linear function as a nodal coefficient vector over
/// all (N+1)^2 mesh nodes. Members of the homogeneous space have zero
/// boundary coefficients.
struct FemFunction {
    const ShishkinMesh* mesh = nullptr;
    std::vector<double> coeffs;

    FemFunction() = default;
    explicit FemFunction(const ShishkinMesh& m)
        : mesh(&m), coeffs(static_cast<std::size_t>(m.num_nodes()), 0.0) {}

    double at_node(int i, int j) const { return coeffs[mesh->node_id(i, j)]; }
    double& at_node(int i, int j) { return coeffs[mesh->node_id(i, j)]; }

    /// Barycentric interpolation at a point of the closed unit square.
    double value(Point p) const;

    /// Value at a point of a specific triangle (p assumed inside it).
    double value_on_tri(int tri, Point p) const;

    /// Constant gradient on a triangle.
    Vec2 gradient(int tri) const;

    /// The restriction to one triangle as explicit linear data.
    struct TriLinear {
        Point p0;
        double v0 = 0.0;
        Vec2 grad;
        double value(Point p) const { return v0 + dot(grad, p - p0); }
    };
    TriLinear linear_on_tri(int tri) const;

    bool boundary_is_zero(double tol = 0.0) const;

    /// Interior coefficients in the linear-system numbering.
    std::vector<double> interior() const;
    void set_interior(const std::vector<double>& v);
};

/// Nodal interpolant: coefficients are f evaluated at the mesh nodes.
FemFunction nodal_interpolant(const std::function<double(double, double)>& f,
                              const ShishkinMesh& mesh);

/// Random member of the homogeneous space, interior coefficients i.i.d.
/// uniform in [-1, 1).
class Rng;
FemFunction random_vn(const ShishkinMesh& mesh, Rng& rng);

}  // namespace sdgreen
