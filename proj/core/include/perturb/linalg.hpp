#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "perturb/error.hpp"
#include "perturb/gaussian_rational.hpp"
#include "perturb/series.hpp"

namespace perturb {

inline GaussianRational ring_zero(const GaussianRational&) { return {}; }
inline GaussianRational ring_one(const GaussianRational&) { return 1; }
inline TruncatedSeries ring_zero(const TruncatedSeries& like) { return TruncatedSeries(like.ring()); }
inline TruncatedSeries ring_one(const TruncatedSeries& like) { return TruncatedSeries(like.ring(), 1); }

/// Dense square matrix, row-major.
template <class T>
class Matrix {
 public:
  Matrix(std::size_t n, const T& fill) : n_(n), entries_(n * n, fill) {}

  std::size_t order() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<T>& entries() const noexcept { return entries_; }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out(n_, f(entries_.at(0)));
    for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = f(entries_[k]);
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const GaussianRational& c, Matrix a) {
    for (auto& x : a.entries_) x *= c;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

  /// Rows and columns restricted to `indices` (increasing).
  Matrix principal_submatrix(const std::vector<std::size_t>& indices) const {
    Matrix out(indices.size(), entries_.at(0));
    for (std::size_t a = 0; a < indices.size(); ++a) {
      for (std::size_t b = 0; b < indices.size(); ++b) out(a, b) = (*this)(indices[a], indices[b]);
    }
    return out;
  }

 private:
  template <class U>
  friend class Matrix;

  void check(const Matrix& o) const {
    if (o.n_ != n_) throw DomainError("matrix order mismatch");
  }

  std::size_t n_;
  std::vector<T> entries_;
};

using ConstantMatrix = Matrix<GaussianRational>;
using SeriesMatrix = Matrix<TruncatedSeries>;

/// Determinant by cofactor expansion, memoized over column subsets
/// (O(n 2^n) ring operations; orders up to ~16).
template <class T>
T determinant(const Matrix<T>& m) {
  const std::size_t n = m.order();
  if (n == 0) throw DomainError("determinant of an empty matrix");
  if (n > 20) throw DomainError("determinant order too large for cofactor expansion");
  const std::size_t states = std::size_t{1} << n;
  std::vector<T> minor(states, ring_zero(m(0, 0)));
  minor[0] = ring_one(m(0, 0));
  for (std::size_t mask = 1; mask < states; ++mask) {
    const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    T acc = ring_zero(m(0, 0));
    std::size_t position = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (std::size_t{1} << col))) continue;
      const T& a = m(row, col);
      if (!a.is_zero()) {
        T term = a * minor[mask & ~(std::size_t{1} << col)];
        // Expansion along the last row of the leading (row+1) x (row+1) block.
        if ((row + position) % 2 == 0) {
          acc += term;
        } else {
          acc -= term;
        }
      }
      ++position;
    }
    minor[mask] = std::move(acc);
  }
  return minor[states - 1];
}

/// Rank over Q(i) of the matrix whose rows are given.
std::size_t exact_rank(std::vector<std::vector<GaussianRational>> rows);

SeriesMatrix lift(const ConstantMatrix& m, const RingPtr& ring);

/// Standard part, entrywise.
ConstantMatrix shadow(const SeriesMatrix& m);

ConstantMatrix conjugate_transpose(const ConstantMatrix& m);

ConstantMatrix identity(std::size_t n);

ConstantMatrix matmul(const ConstantMatrix& a, const ConstantMatrix& b);

}  // namespace perturb
