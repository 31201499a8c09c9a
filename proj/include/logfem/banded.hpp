#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace logfem {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Square matrix with equal lower/upper half-bandwidth. Entries outside the
// band read as zero; writing outside the band is an error. Storage is
// column-major within the band.
template <class Scalar>
class BandedMatrix {
 public:
  BandedMatrix(int n, int half_bandwidth)
      : n_(n), hb_(half_bandwidth), ld_(2 * half_bandwidth + 1) {
    if (n < 1 || half_bandwidth < 0) throw std::invalid_argument("BandedMatrix: bad dimensions");
    data_.assign(static_cast<std::size_t>(n_) * ld_, Scalar{});
  }

  int size() const { return n_; }
  int half_bandwidth() const { return hb_; }

  bool in_band(int i, int j) const {
    return i >= 0 && j >= 0 && i < n_ && j < n_ && std::abs(i - j) <= hb_;
  }

  Scalar get(int i, int j) const { return in_band(i, j) ? data_[index(i, j)] : Scalar{}; }

  Scalar& at(int i, int j) {
    if (!in_band(i, j)) throw std::out_of_range("BandedMatrix: entry outside band");
    return data_[index(i, j)];
  }

  void add(int i, int j, Scalar v) { at(i, j) += v; }

  template <class V>
  std::vector<decltype(Scalar{} * V{})> multiply(std::span<const V> x) const {
    using R = decltype(Scalar{} * V{});
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("BandedMatrix: size mismatch");
    std::vector<R> y(static_cast<std::size_t>(n_), R{});
    for (int j = 0; j < n_; ++j) {
      const int ilo = std::max(0, j - hb_);
      const int ihi = std::min(n_ - 1, j + hb_);
      const V xj = x[static_cast<std::size_t>(j)];
      for (int i = ilo; i <= ihi; ++i) y[static_cast<std::size_t>(i)] += data_[index(i, j)] * xj;
    }
    return y;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * ld_ + static_cast<std::size_t>(i - j + hb_);
  }

  int n_, hb_, ld_;
  std::vector<Scalar> data_;
};

using BandedRealMatrix = BandedMatrix<double>;
using BandedComplexMatrix = BandedMatrix<std::complex<double>>;

// PA = LU with partial pivoting confined to the band; U widens to twice the
// input half-bandwidth. Immutable once built; concurrent solves are safe.
template <class Scalar>
class BandedLU {
 public:
  explicit BandedLU(const BandedMatrix<Scalar>& a)
      : n_(a.size()), kl_(a.half_bandwidth()), ku_(2 * a.half_bandwidth()), ld_(3 * a.half_bandwidth() + 1) {
    ab_.assign(static_cast<std::size_t>(n_) * ld_, Scalar{});
    piv_.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      const int ilo = std::max(0, j - kl_);
      const int ihi = std::min(n_ - 1, j + kl_);
      for (int i = ilo; i <= ihi; ++i) entry(i, j) = a.get(i, j);
    }
    factorize();
  }

  int size() const { return n_; }

  template <class V>
  void solve_in_place(std::span<V> x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("BandedLU: rhs size mismatch");
    // forward: apply pivots and L
    for (int k = 0; k < n_; ++k) {
      const int p = piv_[static_cast<std::size_t>(k)];
      if (p != k) std::swap(x[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(p)]);
      const V xk = x[static_cast<std::size_t>(k)];
      if (xk == V{}) continue;
      const int ihi = std::min(n_ - 1, k + kl_);
      for (int i = k + 1; i <= ihi; ++i) x[static_cast<std::size_t>(i)] -= entry_c(i, k) * xk;
    }
    // backward: U
    for (int k = n_ - 1; k >= 0; --k) {
      x[static_cast<std::size_t>(k)] /= entry_c(k, k);
      const V xk = x[static_cast<std::size_t>(k)];
      if (xk == V{}) continue;
      const int ilo = std::max(0, k - ku_);
      for (int i = ilo; i < k; ++i) x[static_cast<std::size_t>(i)] -= entry_c(i, k) * xk;
    }
  }

  template <class V>
  std::vector<V> solve(std::span<const V> rhs) const {
    std::vector<V> x(rhs.begin(), rhs.end());
    solve_in_place(std::span<V>(x));
    return x;
  }

 private:
  Scalar& entry(int i, int j) {
    return ab_[static_cast<std::size_t>(j) * ld_ + static_cast<std::size_t>(i - j + ku_)];
  }
  const Scalar& entry_c(int i, int j) const {
    return ab_[static_cast<std::size_t>(j) * ld_ + static_cast<std::size_t>(i - j + ku_)];
  }

  void factorize() {
    for (int k = 0; k < n_; ++k) {
      const int ihi = std::min(n_ - 1, k + kl_);
      int p = k;
      double best = std::abs(entry(k, k));
      for (int i = k + 1; i <= ihi; ++i) {
        const double m = std::abs(entry(i, k));
        if (m > best) {
          best = m;
          p = i;
        }
      }
      if (best < 1e-300) throw SingularMatrixError("BandedLU: numerically singular pivot");
      piv_[static_cast<std::size_t>(k)] = p;
      const int jhi = std::min(n_ - 1, k + ku_);
      if (p != k) {
        for (int j = k; j <= jhi; ++j) std::swap(entry(k, j), entry(p, j));
      }
      const Scalar pivot = entry(k, k);
      for (int i = k + 1; i <= ihi; ++i) entry(i, k) /= pivot;
      for (int j = k + 1; j <= jhi; ++j) {
        const Scalar akj = entry(k, j);
        if (akj == Scalar{}) continue;
        Scalar* col = &entry(k + 1, j);
        const Scalar* lcol = &entry_c(k + 1, k);
        for (int i = 0; i <= ihi - (k + 1); ++i) col[i] -= lcol[i] * akj;
      }
    }
  }

  int n_, kl_, ku_, ld_;
  std::vector<Scalar> ab_;
  std::vector<int> piv_;
};

using Factorization = BandedLU<std::complex<double>>;

// System matrix of one implicit step, (i/tau) M - S, restricted to the given
// (ascending) interior degrees of freedom.
BandedComplexMatrix build_step_matrix(const BandedRealMatrix& mass, const BandedRealMatrix& stiffness,
                                      double tau, std::span<const int> interior);

}  // namespace logfem
