#pragma once
#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sdgreen/config.hpp"
#include "sdgreen/geometry.hpp"

namespace sdgreen {

/// Quadrant of the layer dissection: S coarse region, X right layer,
/// Y top layer, XY corner layer.
enum class Region : unsigned char { S, X, Y, XY };

const char* to_string(Region r);

/// Lower-left (K1) or upper-right (K2) triangle of a mesh cell.
enum class TriType : unsigned char { K1, K2 };

struct Triangle {
    std::array<int, 3> v;  // global node ids, counter-clockwise
    TriType type;
    int ci = 0;  // cell column, 0..N-1
    int cj = 0;  // cell row, 0..N-1
    Region region = Region::S;
};

/// Transition parameters lambda_x = min(1/2, rho*eps*ln N / b1) and the
/// y analogue.
std::pair<double, double> transition_parameters(const ProblemConfig& cfg);

/// Piecewise-uniform tensor mesh on the unit square, coarse spacing H on
/// [0, 1-lambda] and fine spacing h on [1-lambda, 1] in each direction,
/// each cell split along the diagonal from (x_i, y_{j+1}) to (x_{i+1}, y_j).
///
/// Built once, then immutable; safe to share read-only across threads.
class ShishkinMesh {
public:
    int n = 0;
    double lambda_x = 0.0, lambda_y = 0.0;
    double Hx = 0.0, hx = 0.0, Hy = 0.0, hy = 0.0;
    std::vector<double> x;  // N+1 coordinates, x[0]=0, x[N]=1
    std::vector<double> y;
    std::vector<Triangle> triangles;  // 2*N^2, cell-major, K1 before K2

    int num_nodes() const { return (n + 1) * (n + 1); }
    int num_interior() const { return (n - 1) * (n - 1); }

    int node_id(int i, int j) const { return j * (n + 1) + i; }
    std::pair<int, int> node_ij(int id) const { return {id % (n + 1), id / (n + 1)}; }
    Point node(int i, int j) const { return {x[i], y[j]}; }

    bool is_boundary(int i, int j) const { return i == 0 || j == 0 || i == n || j == n; }
    /// Contiguous interior numbering used by the linear system; -1 on the boundary.
    int interior_id(int i, int j) const {
        return is_boundary(i, j) ? -1 : (j - 1) * (n - 1) + (i - 1);
    }
    std::pair<int, int> interior_ij(int iid) const {
        return {iid % (n - 1) + 1, iid / (n - 1) + 1};
    }

    double cell_hx(int ci) const { return ci < n / 2 ? Hx : hx; }
    double cell_hy(int cj) const { return cj < n / 2 ? Hy : hy; }
    double tri_area(const Triangle& t) const { return 0.5 * cell_hx(t.ci) * cell_hy(t.cj); }

    /// Region of a point of the closed unit square. Points on a transition
    /// line are assigned to the S/X/Y side (the region left of / below the
    /// line). Throws std::domain_error outside [0,1]^2.
    Region classify_point(Point p) const;

    /// Containing triangle and barycentric coordinates; the piecewise-uniform
    /// coordinates invert in closed form, no search. Throws outside [0,1]^2.
    struct Location {
        int tri = -1;
        std::array<double, 3> bary{};
    };
    Location locate(Point p) const;

    /// Plain-text dump: `N lambda_x lambda_y`, node lines `index x y`,
    /// triangle lines `index v0 v1 v2 type region`.
    void dump(std::ostream& os) const;

    std::array<int, 4> region_cell_counts() const;  // cells per region, order S,X,Y,XY
};

/// Builds the mesh for a validated configuration. Rejects odd or too-small N.
ShishkinMesh build_mesh(const ProblemConfig& cfg);

}  // namespace sdgreen
