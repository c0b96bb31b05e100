#pragma once
#include <functional>
#include <vector>

#include "sdgreen/assembly.hpp"
#include "sdgreen/weight.hpp"

namespace sdgreen {

/// Discrete Green's function at a mesh node x*: the member G of the
/// homogeneous space with a_SD(v, G) = v(x*) for all v, computed by one
/// transpose solve with the unit load at x*.
struct GreenFunction {
    FemFunction g;
    int star_i = 0, star_j = 0;
    Point x_star;
    double solve_residual = 0.0;
};

/// Throws if (i, j) is not an interior node.
GreenFunction compute_green(const SdfemSystem& system, int star_i, int star_j);

/// Triangle predicate for restricted integrations; null means all of the domain.
using TriFilter = std::function<bool(const Triangle&)>;
TriFilter region_filter(Region r);

/// Terms of the weighted energy norm
///   eps||w^{-1/2}G_beta||^2 + eps||w^{-1/2}G_eta||^2 + (b/2)||(w^{-1})_beta^{1/2}G||^2
///   + c||w^{-1/2}G||^2 + sum_K b^2 delta_K ||w^{-1/2}G_beta||_K^2
/// integrated by the given triangle rule.
struct WeightedNormParts {
    double eps_beta = 0.0;
    double eps_eta = 0.0;
    double convection = 0.0;
    double reaction = 0.0;
    double stabilization = 0.0;
    double total_sq = 0.0;
    double norm = 0.0;
};

WeightedNormParts weighted_norm_parts(const FemFunction& g, const WeightParams& wp,
                                      const Directions& dirs, const ProblemConfig& cfg,
                                      const TriFilter& filter = nullptr,
                                      const TriQuadRule& rule = TriQuadRule::degree5());

double weighted_norm(const FemFunction& g, const WeightParams& wp, const Directions& dirs,
                     const ProblemConfig& cfg, const TriFilter& filter = nullptr);

/// Membership in the influence subdomain of x*:
///   (p - x*).beta <= K sigma_beta ln N  and  |(p - x*).eta| <= K sigma_eta ln N.
bool omega0_contains(Point p, const WeightParams& wp, const Directions& dirs, int n);

/// Triangles meeting the influence subdomain with positive area, found by
/// clipping each triangle against the three halfplanes; zero-area touching
/// excluded. measure = total area of the included (whole) triangles.
struct Omega0Cover {
    std::vector<int> tri_indices;
    double measure = 0.0;
};
Omega0Cover omega0_prime(const ShishkinMesh& mesh, const WeightParams& wp,
                         const Directions& dirs);

}  // namespace sdgreen
