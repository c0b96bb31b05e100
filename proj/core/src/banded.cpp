#include "sdgreen/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sdgreen {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ld_(kl + ku + 1), a_(std::size_t(ld_) * n, 0.0) {
    if (n <= 0 || kl < 0 || ku < 0) throw std::invalid_argument("bad band dimensions");
}

std::vector<double> BandedMatrix::apply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("dimension mismatch");
    std::vector<double> y(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        const double xj = x[j];
        const int lo = std::max(0, j - ku_);
        const int hi = std::min(n_ - 1, j + kl_);
        for (int i = lo; i <= hi; ++i) y[i] += a_[idx(i, j)] * xj;
    }
    return y;
}

std::vector<double> BandedMatrix::apply_transpose(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("dimension mismatch");
    std::vector<double> y(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        double s = 0.0;
        const int lo = std::max(0, j - ku_);
        const int hi = std::min(n_ - 1, j + kl_);
        for (int i = lo; i <= hi; ++i) s += a_[idx(i, j)] * x[i];
        y[j] = s;
    }
    return y;
}

double BandedMatrix::inf_norm() const {
    std::vector<double> row_sum(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        const int lo = std::max(0, j - ku_);
        const int hi = std::min(n_ - 1, j + kl_);
        for (int i = lo; i <= hi; ++i) row_sum[i] += std::abs(a_[idx(i, j)]);
    }
    return *std::max_element(row_sum.begin(), row_sum.end());
}

BandedLU BandedLU::factorize(const BandedMatrix& a) {
    BandedLU lu;
    lu.n_ = a.dim();
    lu.kl_ = a.lower_bandwidth();
    lu.ku_ = a.upper_bandwidth();
    lu.ldf_ = 2 * lu.kl_ + lu.ku_ + 1;
    lu.f_.assign(std::size_t(lu.ldf_) * lu.n_, 0.0);
    lu.ipiv_.resize(lu.n_);

    const int n = lu.n_, kl = lu.kl_, kv = lu.kl_ + lu.ku_;
    for (int j = 0; j < n; ++j) {
        const int lo = std::max(0, j - lu.ku_);
        const int hi = std::min(n - 1, j + kl);
        for (int i = lo; i <= hi; ++i) lu.f_[lu.idx(i, j)] = a.get(i, j);
    }

    for (int j = 0; j < n; ++j) {
        // pivot among rows j..j+kl
        const int ihi = std::min(n - 1, j + kl);
        int p = j;
        double best = std::abs(lu.f_[lu.idx(j, j)]);
        for (int i = j + 1; i <= ihi; ++i) {
            const double v = std::abs(lu.f_[lu.idx(i, j)]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        lu.ipiv_[j] = p;
        if (best == 0.0)
            throw std::runtime_error("banded LU: singular matrix at pivot " + std::to_string(j));
        const int jhi = std::min(n - 1, j + kv);
        if (p != j)
            for (int t = j; t <= jhi; ++t) std::swap(lu.f_[lu.idx(j, t)], lu.f_[lu.idx(p, t)]);
        const double piv = lu.f_[lu.idx(j, j)];
        for (int i = j + 1; i <= ihi; ++i) {
            const double m = lu.f_[lu.idx(i, j)] / piv;
            lu.f_[lu.idx(i, j)] = m;
            if (m != 0.0)
                for (int t = j + 1; t <= jhi; ++t)
                    lu.f_[lu.idx(i, t)] -= m * lu.f_[lu.idx(j, t)];
        }
    }
    return lu;
}

std::vector<double> BandedLU::solve(std::vector<double> rhs) const {
    if (static_cast<int>(rhs.size()) != n_) throw std::invalid_argument("dimension mismatch");
    const int kv = kl_ + ku_;
    // forward: interleaved row swaps and L eliminations
    for (int j = 0; j < n_; ++j) {
        if (ipiv_[j] != j) std::swap(rhs[j], rhs[ipiv_[j]]);
        const double xj = rhs[j];
        if (xj == 0.0) continue;
        const int ihi = std::min(n_ - 1, j + kl_);
        for (int i = j + 1; i <= ihi; ++i) rhs[i] -= f_[idx(i, j)] * xj;
    }
    // back substitution with U (bandwidth kl+ku)
    for (int j = n_ - 1; j >= 0; --j) {
        rhs[j] /= f_[idx(j, j)];
        const double xj = rhs[j];
        const int ilo = std::max(0, j - kv);
        for (int i = ilo; i < j; ++i) rhs[i] -= f_[idx(i, j)] * xj;
    }
    return rhs;
}

std::vector<double> BandedLU::solve_transpose(std::vector<double> rhs) const {
    if (static_cast<int>(rhs.size()) != n_) throw std::invalid_argument("dimension mismatch");
    const int kv = kl_ + ku_;
    // U^T z = b, forward substitution
    for (int j = 0; j < n_; ++j) {
        double s = rhs[j];
        const int ilo = std::max(0, j - kv);
        for (int i = ilo; i < j; ++i) s -= f_[idx(i, j)] * rhs[i];
        rhs[j] = s / f_[idx(j, j)];
    }
    // L^T with interleaved swaps, in reverse order of elimination
    for (int j = n_ - 1; j >= 0; --j) {
        double s = rhs[j];
        const int ihi = std::min(n_ - 1, j + kl_);
        for (int i = j + 1; i <= ihi; ++i) s -= f_[idx(i, j)] * rhs[i];
        rhs[j] = s;
        if (ipiv_[j] != j) std::swap(rhs[j], rhs[ipiv_[j]]);
    }
    return rhs;
}

}  // namespace sdgreen
