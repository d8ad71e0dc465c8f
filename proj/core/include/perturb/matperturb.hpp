#pragma once

// Characteristic polynomials of perturbed matrices through principal-minor
// sums Q^(k) and their polarized symmetric k-linear forms Theta_k.

#include <cstddef>
#include <vector>

#include "perturb/exact_poly.hpp"
#include "perturb/goze.hpp"
#include "perturb/linalg.hpp"
#include "perturb/ppoly.hpp"

namespace perturb {

/// A + E with constant A and every entry of E infinitesimal.
class PerturbedMatrix {
 public:
  PerturbedMatrix(ConstantMatrix base, SeriesMatrix pert);

  const ConstantMatrix& base() const noexcept { return base_; }
  const SeriesMatrix& pert() const noexcept { return pert_; }
  const RingPtr& ring() const noexcept { return pert_(0, 0).ring(); }
  std::size_t order() const noexcept { return base_.order(); }

  /// A + E as a matrix of series.
  SeriesMatrix full() const;

 private:
  ConstantMatrix base_;
  SeriesMatrix pert_;
};

/// Sum of all k x k principal minors (1 <= k <= n).
template <class T>
T minor_sum(const Matrix<T>& m, std::size_t k) {
  const std::size_t n = m.order();
  if (k < 1 || k > n) throw DomainError("minor order k out of range");
  T sum = ring_zero(m(0, 0));
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    sum += determinant(m.principal_submatrix(idx));
    // next k-combination of {0..n-1}
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return sum;
}

/// Theta_k(M1..Mk) = sum over S of (-1)^(k-|S|) Q^(k)(sum_{i in S} Mi);
/// normalized so that Theta_k(A,...,A) = k! Q^(k)(A).
template <class T>
T polarize(std::size_t k, const std::vector<Matrix<T>>& args) {
  if (args.size() != k || k == 0) throw DomainError("polarize needs exactly k >= 1 matrices");
  const std::size_t n = args.front().order();
  for (const auto& a : args) {
    if (a.order() != n) throw DomainError("polarize: matrix order mismatch");
  }
  if (k > n) throw DomainError("polarize: k exceeds the matrix order");
  const T zero = ring_zero(args.front()(0, 0));
  T out = zero;
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    Matrix<T> sum(n, zero);
    std::size_t size = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) {
        sum += args[i];
        ++size;
      }
    }
    if ((k - size) % 2 == 0) {
      out += minor_sum(sum, k);
    } else {
      out -= minor_sum(sum, k);
    }
  }
  return out;
}

/// X^n + sum_k (-1)^k Q^(k)(M) X^(n-k).
ExactPoly char_poly(const ConstantMatrix& m);
PerturbedPolynomial char_poly(const SeriesMatrix& m);
PerturbedPolynomial char_poly(const PerturbedMatrix& m);

/// Q^(k)(A) + sum_{i=1..k} Theta_k(A^(k-i), E^(i)) / (i! (k-i)!).
TruncatedSeries charpoly_expansion(const ConstantMatrix& a, const SeriesMatrix& e, std::size_t k);

/// Goze decomposition of E flattened row-major (univariate ring required).
GozeDecomposition decompose_matrix(const SeriesMatrix& e);

/// Direction of a Goze level reshaped to an n x n matrix (row-major).
ConstantMatrix level_matrix(const GozeLevel& level, std::size_t n);

/// a1 sum_k (-1)^k Theta_k(A,...,A,U1) X^(n-k) / (k-1)!, the first-order part
/// of C_{A+E} - C_A.
PerturbedPolynomial xi_first_order(const ConstantMatrix& a, const SeriesMatrix& e);
/// Same, from an explicit first scale a1 and direction U1.
PerturbedPolynomial xi_first_order(const ConstantMatrix& a, const TruncatedSeries& alpha1,
                                   const ConstantMatrix& u1);

/// xi^p ~ -p! Xi(a) / C_A^(p)(a) with Xi = C_{A+E} - C_A.
/// `multiplicity` 0 means: use the exact multiplicity of a in C_A.
RootAsymptotics eigenvalue_correction(const PerturbedMatrix& m, const GaussianRational& eigenvalue,
                                      unsigned multiplicity = 0);

/// Q^(k)(A+E) - Q^(k)(A), k = 1..n; all zero iff E is conservative.
std::vector<TruncatedSeries> conservative_residuals(const SeriesMatrix& a, const SeriesMatrix& e);
std::vector<TruncatedSeries> conservative_residuals(const PerturbedMatrix& m);

/// n^2 - nullity of M -> MA - AM.
std::size_t orbit_dimension(const ConstantMatrix& a);

bool is_hermitian(const ConstantMatrix& m);

/// rho = -Xi1(lambda) / C_A'(lambda) for Hermitian A, U1 and a simple eigenvalue lambda.
TruncatedSeries hermitian_first_order(const ConstantMatrix& a, const ConstantMatrix& u1,
                                      const TruncatedSeries& alpha1,
                                      const GaussianRational& lambda);

}  // namespace perturb
