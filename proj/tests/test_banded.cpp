#include <doctest.h>

#include <cmath>
#include <vector>

#include "sdgreen/banded.hpp"
#include "sdgreen/rng.hpp"
#include "support/oracles.hpp"

using namespace sdgreen;

namespace {

// random banded matrix, optionally diagonally dominant
BandedMatrix random_banded(int n, int kl, int ku, Rng& rng, bool dominant) {
    BandedMatrix a(n, kl, ku);
    for (int j = 0; j < n; ++j)
        for (int i = std::max(0, j - ku); i <= std::min(n - 1, j + kl); ++i)
            a.set(i, j, rng.uniform_pm1());
    if (dominant)
        for (int i = 0; i < n; ++i) a.add(i, i, i % 2 ? kl + ku + 2.0 : -(kl + ku + 2.0));
    return a;
}

std::vector<double> to_dense(const BandedMatrix& a) {
    const int n = a.dim();
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[std::size_t(i) * n + j] = a.get(i, j);
    return d;
}

}  // namespace

TEST_CASE("identity factorization") {
    BandedMatrix a(5, 1, 1);
    for (int i = 0; i < 5; ++i) a.set(i, i, 1.0);
    const BandedLU lu = BandedLU::factorize(a);
    for (int j = 0; j < 5; ++j) {
        CHECK(lu.pivots()[j] == j);
        CHECK(lu.upper(j, j) == 1.0);
    }
    const std::vector<double> rhs{1, 2, 3, 4, 5};
    CHECK(lu.solve(rhs) == rhs);
    CHECK(lu.solve_transpose(rhs) == rhs);
}

TEST_CASE("2x2 permutation case") {
    BandedMatrix a(2, 1, 1);
    a.set(0, 1, 1.0);
    a.set(1, 0, 1.0);
    const BandedLU lu = BandedLU::factorize(a);
    const std::vector<double> x = lu.solve({1.0, 2.0});
    CHECK(x[0] == doctest::Approx(2.0));
    CHECK(x[1] == doctest::Approx(1.0));
}

TEST_CASE("matches the dense oracle on random banded systems") {
    Rng rng(kDefaultSeed);
    for (const bool dominant : {true, false}) {
        CAPTURE(dominant);
        const int n = 50, kl = 5, ku = 3;
        const BandedMatrix a = random_banded(n, kl, ku, rng, dominant);
        const BandedLU lu = BandedLU::factorize(a);
        const auto dense = oracles::DenseLU::factor(to_dense(a), n);
        std::vector<double> rhs(n);
        for (double& v : rhs) v = rng.uniform_pm1();

        const auto x = lu.solve(rhs);
        const auto xd = dense.solve(rhs);
        const auto xt = lu.solve_transpose(rhs);
        const auto xtd = dense.solve_transpose(rhs);
        for (int i = 0; i < n; ++i) {
            CHECK(x[i] == doctest::Approx(xd[i]).epsilon(1e-10));
            CHECK(xt[i] == doctest::Approx(xtd[i]).epsilon(1e-10));
        }

        // residuals
        const auto ax = a.apply(x);
        const auto atx = a.apply_transpose(xt);
        double rn = 0.0, rtn = 0.0, bn = 0.0;
        for (int i = 0; i < n; ++i) {
            rn += (ax[i] - rhs[i]) * (ax[i] - rhs[i]);
            rtn += (atx[i] - rhs[i]) * (atx[i] - rhs[i]);
            bn += rhs[i] * rhs[i];
        }
        CHECK(std::sqrt(rn / bn) <= 1e-10);
        CHECK(std::sqrt(rtn / bn) <= 1e-10);
    }
}

TEST_CASE("factorization reconstructs P A = L U") {
    Rng rng(123);
    const int n = 24, kl = 3, ku = 2;
    const BandedMatrix a = random_banded(n, kl, ku, rng, false);
    const BandedLU lu = BandedLU::factorize(a);

    // L column j carries the stored multipliers with all later row swaps
    // applied; U comes straight out of the band.
    std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> u(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        l[std::size_t(j) * n + j] = 1.0;
        std::vector<double> m(n, 0.0);
        for (int i = j + 1; i <= std::min(n - 1, j + kl); ++i) m[i] = lu.lower(i, j);
        for (int k = j + 1; k < n; ++k)
            if (lu.pivots()[k] != k) std::swap(m[k], m[lu.pivots()[k]]);
        for (int i = j + 1; i < n; ++i) l[std::size_t(i) * n + j] = m[i];
        for (int i = std::max(0, j - kl - ku); i <= j; ++i)
            u[std::size_t(i) * n + j] = lu.upper(i, j);
    }
    // P A: apply the recorded swaps in elimination order
    std::vector<double> pa = to_dense(a);
    for (int k = 0; k < n; ++k)
        if (lu.pivots()[k] != k)
            for (int j = 0; j < n; ++j)
                std::swap(pa[std::size_t(k) * n + j], pa[std::size_t(lu.pivots()[k]) * n + j]);

    double max_err = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double luij = 0.0;
            for (int k = 0; k < n; ++k) luij += l[std::size_t(i) * n + k] * u[std::size_t(k) * n + j];
            max_err = std::max(max_err, std::abs(luij - pa[std::size_t(i) * n + j]));
            scale = std::max(scale, std::abs(pa[std::size_t(i) * n + j]));
        }
    CHECK(max_err <= 1e-10 * scale);
}

TEST_CASE("singular matrix reports the pivot index") {
    BandedMatrix a(4, 1, 1);
    a.set(0, 0, 1.0);
    a.set(1, 1, 1.0);
    // column 2 entirely zero
    a.set(3, 3, 1.0);
    CHECK_THROWS_WITH_AS(static_cast<void>(BandedLU::factorize(a)),
                         doctest::Contains("pivot 2"), std::runtime_error);
}

TEST_CASE("dimension mismatch is rejected") {
    BandedMatrix a(4, 1, 1);
    for (int i = 0; i < 4; ++i) a.set(i, i, 2.0);
    const BandedLU lu = BandedLU::factorize(a);
    CHECK_THROWS_AS(static_cast<void>(lu.solve({1.0, 2.0})), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(a.apply(std::vector<double>{1.0})), std::invalid_argument);
}

TEST_CASE("transpose solve equals plain solve on a symmetric matrix") {
    Rng rng(7);
    const int n = 30, kb = 2;
    BandedMatrix a(n, kb, kb);
    for (int j = 0; j < n; ++j)
        for (int i = j; i <= std::min(n - 1, j + kb); ++i) {
            const double v = rng.uniform_pm1();
            a.set(i, j, v);
            if (i != j) a.set(j, i, v);
        }
    for (int i = 0; i < n; ++i) a.add(i, i, 2.0 * kb + 3.0);
    const BandedLU lu = BandedLU::factorize(a);
    std::vector<double> rhs(n);
    for (double& v : rhs) v = rng.uniform_pm1();
    const auto x = lu.solve(rhs);
    const auto xt = lu.solve_transpose(rhs);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(xt[i]).epsilon(1e-12));
}
