#pragma once
#include <span>
#include <vector>

namespace sdgreen {

/// Nonsymmetric banded matrix, kl subdiagonals and ku superdiagonals,
/// column-major band storage.
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(int n, int kl, int ku);

    int dim() const { return n_; }
    int lower_bandwidth() const { return kl_; }
    int upper_bandwidth() const { return ku_; }

    bool in_band(int i, int j) const { return i - j <= kl_ && j - i <= ku_; }
    double get(int i, int j) const { return in_band(i, j) ? a_[idx(i, j)] : 0.0; }
    void set(int i, int j, double v) { a_[idx(i, j)] = v; }
    void add(int i, int j, double v) { a_[idx(i, j)] += v; }

    std::vector<double> apply(std::span<const double> x) const;
    std::vector<double> apply_transpose(std::span<const double> x) const;

    /// max_i sum_j |A(i,j)|
    double inf_norm() const;

private:
    std::size_t idx(int i, int j) const { return std::size_t(j) * ld_ + (i - j + ku_); }
    int n_ = 0, kl_ = 0, ku_ = 0, ld_ = 0;
    std::vector<double> a_;
};

/// LU factorization with row partial pivoting of a banded matrix; the upper
/// bandwidth grows to kl+ku from pivoting fill. Provides solve with A and
/// with A^T from the one factorization.
class BandedLU {
public:
    static BandedLU factorize(const BandedMatrix& a);

    std::vector<double> solve(std::vector<double> rhs) const;
    std::vector<double> solve_transpose(std::vector<double> rhs) const;

    int dim() const { return n_; }
    const std::vector<int>& pivots() const { return ipiv_; }
    /// Stored multiplier L(i,j), i in (j, j+kl].
    double lower(int i, int j) const { return f_[idx(i, j)]; }
    /// Stored factor U(i,j), i in [j-kl-ku, j].
    double upper(int i, int j) const { return f_[idx(i, j)]; }

private:
    std::size_t idx(int i, int j) const { return std::size_t(j) * ldf_ + (i - j + kl_ + ku_); }
    int n_ = 0, kl_ = 0, ku_ = 0, ldf_ = 0;
    std::vector<double> f_;
    std::vector<int> ipiv_;
};

}  // namespace sdgreen
