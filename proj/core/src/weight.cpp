#include "sdgreen/weight.hpp"

#include <cmath>

namespace sdgreen {

Directions Directions::from(const ProblemConfig& cfg) {
    Directions d;
    d.b_mag = std::sqrt(cfg.b1 * cfg.b1 + cfg.b2 * cfg.b2);
    d.beta = {cfg.b1 / d.b_mag, cfg.b2 / d.b_mag};
    d.eta = {-cfg.b2 / d.b_mag, cfg.b1 / d.b_mag};
    return d;
}

WeightParams WeightParams::make(Point x_star, double k, double big_k, int n) {
    WeightParams wp;
    wp.x_star = x_star;
    wp.k = k;
    wp.big_k = big_k;
    const double ln_n = std::log(static_cast<double>(n));
    wp.sigma_beta = k * ln_n / n;
    wp.sigma_eta = k / std::sqrt(static_cast<double>(n));
    return wp;
}

WeightParams WeightParams::unweighted(Point x_star) {
    WeightParams wp;
    wp.x_star = x_star;
    wp.sigma_beta = std::numeric_limits<double>::infinity();
    wp.sigma_eta = std::numeric_limits<double>::infinity();
    return wp;
}

double g_factor(double r) {
    if (r >= 0.0) {
        const double e = std::exp(-r);
        return 2.0 * e / (1.0 + e);
    }
    return 2.0 / (1.0 + std::exp(r));
}

namespace {

// log((1+e^r)/2), the log of 1/g, overflow-free
double log_h(double r) {
    if (r > 0.0) return r + std::log1p(std::exp(-r)) - M_LN2;
    return std::log1p(std::exp(r)) - M_LN2;
}

// log(cosh(r/2)^2) = 2 log cosh(r/2)
double log_cosh_sq_half(double r) {
    const double a = std::abs(0.5 * r);
    return 2.0 * (a + std::log1p(std::exp(-2.0 * a)) - M_LN2);
}

// logistic e^r/(1+e^r)
double sigmoid(double r) {
    if (r >= 0.0) return 1.0 / (1.0 + std::exp(-r));
    const double e = std::exp(r);
    return e / (1.0 + e);
}

double sech_sq_half(double r) {
    const double t = std::tanh(0.5 * r);
    return 1.0 - t * t;
}

}  // namespace

WeightValues weight(Point p, const WeightParams& wp, const Directions& dirs) {
    const Vec2 d = {p.x - wp.x_star.x, p.y - wp.x_star.y};
    const double rb = dot(d, dirs.beta) / wp.sigma_beta;
    const double re = dot(d, dirs.eta) / wp.sigma_eta;

    // omega^{-1} = h(r_beta) * cosh^2(r_eta/2), evaluated in log domain
    const double log_inv = log_h(rb) + log_cosh_sq_half(re);
    const double sb = sigmoid(rb);        // h'/h = h''/h
    const double te = std::tanh(0.5 * re);  // (cosh^2)'/cosh^2

    WeightValues w;
    w.omega_inv = std::exp(log_inv);
    w.omega = std::exp(-log_inv);
    w.omega_inv_beta = w.omega_inv * sb / wp.sigma_beta;
    w.omega_inv_eta = w.omega_inv * te / wp.sigma_eta;
    w.omega_inv_bb = w.omega_inv * sb / (wp.sigma_beta * wp.sigma_beta);
    w.omega_inv_be = w.omega_inv * sb * te / (wp.sigma_beta * wp.sigma_eta);
    w.omega_inv_ee = w.omega_inv * (1.0 - 0.5 * sech_sq_half(re)) / (wp.sigma_eta * wp.sigma_eta);
    w.omega_beta = -w.omega * sb / wp.sigma_beta;
    w.omega_eta = -w.omega * te / wp.sigma_eta;
    return w;
}

}  // namespace sdgreen
