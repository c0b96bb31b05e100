#include <doctest.h>

#include <cmath>

#include "sdgreen/rng.hpp"
#include "sdgreen/weight.hpp"
#include "support/oracles.hpp"

using namespace sdgreen;

namespace {

ProblemConfig cfg23() {
    ProblemConfig cfg;
    cfg.b1 = 2.0;
    cfg.b2 = 3.0;
    cfg.n = 32;
    return cfg;
}

}  // namespace

TEST_CASE("directions are an orthonormal pair") {
    const Directions d = Directions::from(cfg23());
    CHECK(d.b_mag == doctest::Approx(std::sqrt(13.0)).epsilon(1e-15));
    CHECK(std::abs(norm(d.beta) - 1.0) <= 1e-14);
    CHECK(std::abs(norm(d.eta) - 1.0) <= 1e-14);
    CHECK(std::abs(dot(d.beta, d.eta)) <= 1e-14);
}

TEST_CASE("weight values at characteristic points") {
    const ProblemConfig cfg = cfg23();
    const Directions dirs = Directions::from(cfg);
    const Point xs{0.4, 0.35};
    const WeightParams wp = WeightParams::make(xs, cfg.k, cfg.big_k, cfg.n);

    SUBCASE("center value is one to 2 ulp") {
        const WeightValues w = weight(xs, wp, dirs);
        CHECK(std::abs(w.omega - 1.0) <= 2.0 * std::ldexp(1.0, -52));
        CHECK(std::abs(w.omega_inv - 1.0) <= 2.0 * std::ldexp(1.0, -52));
    }
    SUBCASE("one streamline scale downstream") {
        const Point p{xs.x + wp.sigma_beta * dirs.beta.x, xs.y + wp.sigma_beta * dirs.beta.y};
        const WeightValues w = weight(p, wp, dirs);
        // g(1) = 2/(1+e)
        CHECK(w.omega == doctest::Approx(0.5378828427399902).epsilon(1e-14));
    }
    SUBCASE("strictly decreasing along +beta") {
        double prev = 2.0;
        for (double t : {0.0, 0.3, 1.0, 2.5, 6.0}) {
            const Point p{xs.x + t * wp.sigma_beta * dirs.beta.x,
                          xs.y + t * wp.sigma_beta * dirs.beta.y};
            const double om = weight(p, wp, dirs).omega;
            CHECK(om < prev);
            prev = om;
        }
    }
    SUBCASE("bounded by 2 and positive") {
        Rng rng(kDefaultSeed);
        for (int t = 0; t < 1000; ++t) {
            const WeightValues w = weight(rng.point_in_unit_square(), wp, dirs);
            CHECK(w.omega > 0.0);
            CHECK(w.omega <= 2.0);
            CHECK(w.omega_inv_beta > 0.0);
        }
    }
}

TEST_CASE("g factor symmetry bound") {
    CHECK(g_factor(0.0) == 1.0);
    for (double r : {1e-8, 0.3, 1.0, 5.0, 40.0, 500.0, 800.0}) {
        const double prod = g_factor(r) * g_factor(-r);
        CHECK(prod < 1.0);
        CHECK(prod > 0.0);
        CHECK(g_factor(r) + g_factor(-r) == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("unweighted mode: identically one with vanishing derivatives") {
    const ProblemConfig cfg = cfg23();
    const Directions dirs = Directions::from(cfg);
    const WeightParams wp = WeightParams::unweighted({0.5, 0.5});
    Rng rng(kDefaultSeed);
    for (int t = 0; t < 100; ++t) {
        const WeightValues w = weight(rng.point_in_unit_square(), wp, dirs);
        CHECK(w.omega == 1.0);
        CHECK(w.omega_inv == 1.0);
        CHECK(w.omega_beta == 0.0);
        CHECK(w.omega_eta == 0.0);
        CHECK(w.omega_inv_beta == 0.0);
        CHECK(w.omega_inv_eta == 0.0);
        CHECK(w.omega_inv_bb == 0.0);
        CHECK(w.omega_inv_be == 0.0);
        CHECK(w.omega_inv_ee == 0.0);
    }
}

TEST_CASE("analytic derivatives match central finite differences") {
    // Relative error floored at the natural derivative scale value/sigma^k,
    // so the comparison stays meaningful where a derivative crosses zero or
    // decays exponentially.
    const ProblemConfig cfg = cfg23();
    const Directions dirs = Directions::from(cfg);
    for (int n : {16, 64}) {
        const Point xs{0.45, 0.4};
        const WeightParams wp = WeightParams::make(xs, cfg.k, cfg.big_k, n);
        CAPTURE(n);
        auto omega_of = [&](Point p) { return weight(p, wp, dirs).omega; };
        auto inv_of = [&](Point p) { return weight(p, wp, dirs).omega_inv; };

        Rng rng(kDefaultSeed);
        const double h1b = 1e-6 * wp.sigma_beta, h1e = 1e-6 * wp.sigma_eta;
        const double h2b = 1e-3 * wp.sigma_beta, h2e = 1e-3 * wp.sigma_eta;
        int tested = 0;
        while (tested < 100) {
            const Point p = rng.point_in_unit_square();
            // keep the stencil inside the closed square
            if (p.x < 0.01 || p.x > 0.99 || p.y < 0.01 || p.y > 0.99) continue;
            ++tested;
            const WeightValues w = weight(p, wp, dirs);

            auto close = [&](double analytic, double fd, double scale) {
                const double den = std::max(std::abs(analytic), std::abs(scale));
                CHECK(std::abs(fd - analytic) <= 1e-6 * den);
            };
            close(w.omega_beta, oracles::fd1(omega_of, p, dirs.beta, h1b),
                  w.omega / wp.sigma_beta);
            close(w.omega_eta, oracles::fd1(omega_of, p, dirs.eta, h1e),
                  w.omega / wp.sigma_eta);
            close(w.omega_inv_beta, oracles::fd1(inv_of, p, dirs.beta, h1b),
                  w.omega_inv / wp.sigma_beta);
            close(w.omega_inv_eta, oracles::fd1(inv_of, p, dirs.eta, h1e),
                  w.omega_inv / wp.sigma_eta);
            close(w.omega_inv_bb, oracles::fd2(inv_of, p, dirs.beta, h2b),
                  w.omega_inv / (wp.sigma_beta * wp.sigma_beta));
            close(w.omega_inv_ee, oracles::fd2(inv_of, p, dirs.eta, h2e),
                  w.omega_inv / (wp.sigma_eta * wp.sigma_eta));
            close(w.omega_inv_be,
                  oracles::fd_cross(inv_of, p, dirs.beta, h2b, dirs.eta, h2e),
                  w.omega_inv / (wp.sigma_beta * wp.sigma_eta));
        }
    }
}

TEST_CASE("weight parameter scales") {
    const WeightParams wp = WeightParams::make({0.5, 0.5}, 4.0, 1.0, 64);
    CHECK(wp.sigma_beta == doctest::Approx(4.0 * std::log(64.0) / 64.0).epsilon(1e-15));
    CHECK(wp.sigma_eta == doctest::Approx(0.5).epsilon(1e-15));
}
