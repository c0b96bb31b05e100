#pragma once
#include <optional>
#include <string>
#include <vector>

namespace sdgreen {

/// All scalar parameters of the convection-diffusion model
///   -eps*Lap(u) + b.grad(u) + c*u = f   on (0,1)^2,  u = 0 on the boundary,
/// together with the discretization knobs (mesh parameter N, mesh grading
/// exponent rho, stabilization constant C*, weight-scale constants k and K).
struct ProblemConfig {
    double epsilon = 1e-6;  // diffusion
    double b1 = 2.0;        // convection, x component (> 0)
    double b2 = 3.0;        // convection, y component (> 0)
    double c = 1.0;         // reaction (> 0)
    int n = 32;             // mesh parameter, even, >= 4
    double rho = 2.5;       // transition-parameter factor

    /// Stabilization constant C*; delta_K = C* / N on the coarse region.
    /// Unset means the default 0.25 / |b|^2.
    std::optional<double> c_star;

    double k = 4.0;      // weight-scale constant (sigma_beta, sigma_eta)
    double big_k = 1.0;  // influence-subdomain size constant

    double b_mag_sq() const { return b1 * b1 + b2 * b2; }
    double effective_c_star() const { return c_star ? *c_star : 0.25 / b_mag_sq(); }

    /// Throws std::invalid_argument on a malformed configuration.
    void validate() const;

    /// Non-fatal advisories, e.g. epsilon > 1/N (mesh transition clamps at 1/2).
    std::vector<std::string> warnings() const;
};

}  // namespace sdgreen
