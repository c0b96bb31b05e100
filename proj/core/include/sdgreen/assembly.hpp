#pragma once
#include <array>
#include <functional>
#include <optional>

#include "sdgreen/banded.hpp"
#include "sdgreen/config.hpp"
#include "sdgreen/fem_function.hpp"
#include "sdgreen/mesh.hpp"
#include "sdgreen/quadrature.hpp"

namespace sdgreen {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Raw PDE/stabilization coefficients for element-level routines; lets tests
/// switch individual terms off without going through config validation.
struct PdeCoefficients {
    double eps = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double c = 0.0;

    static PdeCoefficients from(const ProblemConfig& cfg) {
        return {cfg.epsilon, cfg.b1, cfg.b2, cfg.c};
    }
};

/// Stabilization parameter of a triangle: C*/N on the coarse region, else 0.
double delta_on_triangle(Region region, const ProblemConfig& cfg);

/// Element matrices with rows = test index, columns = trial index.
/// galerkin = eps*stiffness + convection + c*mass, closed form (exact);
/// stabilization = delta * ((b.grad trial)(b.grad test)|K| + c(b.grad test)|K|/3
/// pattern); the -eps*Lap(trial) term vanishes for P1.
struct LocalMatrices {
    Mat3 galerkin{};
    Mat3 stabilization{};
};
LocalMatrices local_matrices(const TriGeometry& g, const PdeCoefficients& pc, double delta);

/// Assembled SDFEM system over interior nodes: A[i][j] = a_SD(phi_j, phi_i),
/// Dirichlet rows/columns eliminated. Assembly is serial in fixed element
/// order, so matrices are bit-reproducible.
class SdfemSystem {
public:
    const ShishkinMesh* mesh = nullptr;
    ProblemConfig cfg;
    BandedMatrix matrix;

    int dim() const { return matrix.dim(); }
    double matrix_inf_norm() const { return matrix.inf_norm(); }

    void factorize();
    bool factorized() const { return lu_.has_value(); }

    /// Solve A x = rhs with one step of iterative refinement; throws if the
    /// relative residual exceeds 1e-10.
    std::vector<double> solve(const std::vector<double>& rhs) const;
    /// Same for A^T x = rhs (the route to the discrete Green's function).
    std::vector<double> solve_transpose(const std::vector<double>& rhs) const;

    double last_residual() const { return last_residual_; }

    /// Bilinear form through the matrix: a_SD(trial, test) = test^T A trial.
    /// Both arguments must be members of the homogeneous space.
    double a_sd(const FemFunction& trial, const FemFunction& test) const;

    /// Debug dump in coordinate text format `i j value`.
    void dump_matrix(std::ostream& os) const;

private:
    std::optional<BandedLU> lu_;
    mutable double last_residual_ = 0.0;
};

SdfemSystem assemble_system(const ShishkinMesh& mesh, const ProblemConfig& cfg);

/// Load vector: rhs_i = int f phi_i + sum_K delta_K int_K f (b.grad phi_i),
/// degree-5 quadrature, interior numbering.
std::vector<double> assemble_rhs(const ShishkinMesh& mesh, const ProblemConfig& cfg,
                                 const std::function<double(double, double)>& f);

/// Solves the discrete problem for the given load and returns the solution
/// with zero boundary values. Factorizes on demand.
FemFunction solve_fem(SdfemSystem& system, const std::function<double(double, double)>& f);

/// Energy norm: sqrt(eps|v|_1^2 + ||v||^2 + sum_K delta_K ||b.grad v||_K^2),
/// all terms integrated exactly.
double sd_norm(const FemFunction& v, const ProblemConfig& cfg);

}  // namespace sdgreen
