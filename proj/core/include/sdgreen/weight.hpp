#pragma once
#include <limits>

#include "sdgreen/config.hpp"
#include "sdgreen/geometry.hpp"

namespace sdgreen {

/// Streamline (beta) and crosswind (eta) unit directions of the convection
/// field, plus its magnitude.
struct Directions {
    double b_mag = 0.0;
    Vec2 beta;
    Vec2 eta;

    static Directions from(const ProblemConfig& cfg);
};

/// Decay scales of the weight centered at x_star:
/// sigma_beta = k ln(N)/N along the streamline, sigma_eta = k/sqrt(N) crosswind.
struct WeightParams {
    Point x_star;
    double sigma_beta = 0.0;
    double sigma_eta = 0.0;
    double k = 0.0;
    double big_k = 0.0;

    static WeightParams make(Point x_star, double k, double big_k, int n);
    static WeightParams make(Point x_star, const ProblemConfig& cfg) {
        return make(x_star, cfg.k, cfg.big_k, cfg.n);
    }
    /// Infinite scales: the weight is identically 1 and all derivatives vanish.
    static WeightParams unweighted(Point x_star);
};

/// omega = g(r_beta) g(r_eta) g(-r_eta) with g(r) = 2/(1+e^r), evaluated
/// together with the directional derivatives needed downstream. Derivative
/// subscripts are directions, not partials in x/y.
struct WeightValues {
    double omega = 0.0;
    double omega_beta = 0.0;
    double omega_eta = 0.0;
    double omega_inv = 0.0;
    double omega_inv_beta = 0.0;
    double omega_inv_eta = 0.0;
    double omega_inv_bb = 0.0;
    double omega_inv_be = 0.0;
    double omega_inv_ee = 0.0;
};

WeightValues weight(Point p, const WeightParams& wp, const Directions& dirs);

/// g(r) = 2/(1+e^r), evaluated without overflow for any r.
double g_factor(double r);

}  // namespace sdgreen
