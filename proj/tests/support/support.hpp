#pragma once

// Seeded random instances and independent reference computations used to
// derive expected values in the tests. Nothing here calls the code under test
// for the quantity being checked.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "perturb/exact_poly.hpp"
#include "perturb/linalg.hpp"
#include "perturb/series.hpp"

namespace perturb::testing {

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// num/den with num in [-5,5], den in [1,5].
  GaussianRational rational() { return GaussianRational::fraction(integer(-5, 5), integer(1, 5)); }

  GaussianRational gaussian() {
    return {GaussianRational::fraction(integer(-3, 3), integer(1, 3)).real(),
            GaussianRational::fraction(integer(-3, 3), integer(1, 3)).real()};
  }

  /// Random series with roughly `density` of the monomials of degree in
  /// [min_degree, T] present.
  TruncatedSeries series(const RingPtr& ring, int min_degree = 0, double density = 0.4) {
    TruncatedSeries out(ring);
    std::vector<Exponent> all;
    Exponent e(ring->arity(), 0);
    enumerate(ring, 0, e, all);
    for (const auto& m : all) {
      if (total_degree(m) < min_degree) continue;
      if (std::uniform_real_distribution<double>(0, 1)(rng_) < density) {
        out += TruncatedSeries::monomial(ring, m, rational());
      }
    }
    return out;
  }

  /// Series with constant term forced nonzero.
  TruncatedSeries unit(const RingPtr& ring) {
    TruncatedSeries s = series(ring, 1);
    int c = 0;
    while (c == 0) c = integer(-5, 5);
    return s + TruncatedSeries(ring, c);
  }

  /// c * t^v * (1 + higher) with v in [min_v, max_v], or zero with probability p_zero.
  TruncatedSeries infinitesimal(const RingPtr& ring, int min_v, int max_v, double p_zero = 0.0) {
    if (std::uniform_real_distribution<double>(0, 1)(rng_) < p_zero) return TruncatedSeries(ring);
    const int v = integer(min_v, max_v);
    TruncatedSeries s = series(ring, v + 1, 0.3);
    int c = 0;
    while (c == 0) c = integer(-4, 4);
    Exponent e(ring->arity(), 0);
    e[0] = v;
    return s + TruncatedSeries::monomial(ring, e, c);
  }

  ConstantMatrix int_matrix(std::size_t n, int lo, int hi) {
    ConstantMatrix m(n, GaussianRational{});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = integer(lo, hi);
    }
    return m;
  }

  ExactPoly poly(int degree, bool monic = false) {
    std::vector<GaussianRational> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) x = integer(-4, 4);
    if (monic) c.back() = 1;
    while (c.back().is_zero()) c.back() = integer(1, 4);
    return ExactPoly(c);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  void enumerate(const RingPtr& ring, std::size_t g, Exponent& e, std::vector<Exponent>& out) {
    if (g == ring->arity()) {
      out.push_back(e);
      return;
    }
    for (int d = 0; total_degree(e) + d <= ring->truncation(); ++d) {
      e[g] = d;
      enumerate(ring, g + 1, e, out);
      e[g] = 0;
    }
  }

  std::mt19937_64 rng_;
};

/// Determinant by the Leibniz permutation sum.
template <class T>
T leibniz_det(const Matrix<T>& m) {
  const std::size_t n = m.order();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total = ring_zero(m(0, 0));
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    T term = ring_one(m(0, 0));
    for (std::size_t i = 0; i < n; ++i) term = term * m(i, perm[i]);
    if (inversions % 2) {
      total -= term;
    } else {
      total += term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Sum of k x k principal minors, each by the Leibniz formula.
template <class T>
T reference_minor_sum(const Matrix<T>& m, std::size_t k) {
  const std::size_t n = m.order();
  T total = ring_zero(m(0, 0));
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) idx.push_back(i);
    }
    if (idx.size() == k) total += leibniz_det(m.principal_submatrix(idx));
  }
  return total;
}

/// Rank by Gaussian elimination over Q(i).
inline std::size_t reference_rank(std::vector<std::vector<GaussianRational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const GaussianRational f = rows[r][c] * rows[rank][c].inverse();
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Elementary symmetric polynomial e_k of the values.
inline GaussianRational elementary_symmetric(const std::vector<GaussianRational>& x, std::size_t k) {
  std::vector<GaussianRational> e(k + 1);
  e[0] = 1;
  for (const auto& v : x) {
    for (std::size_t j = k; j >= 1; --j) e[j] += e[j - 1] * v;
  }
  return e[k];
}

/// prod_i (X - r_i), expanded directly.
inline ExactPoly from_roots(const std::vector<GaussianRational>& roots) {
  std::vector<GaussianRational> c{1};
  for (const auto& r : roots) {
    std::vector<GaussianRational> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= c[k] * r;
    }
    c = std::move(next);
  }
  return ExactPoly(c);
}

inline double max_root_error(std::vector<std::complex<double>> got, std::vector<std::complex<double>> want) {
  // Greedy nearest matching; adequate for well-separated test roots.
  double worst = 0;
  for (const auto& w : want) {
    auto it = std::min_element(got.begin(), got.end(), [&](auto a, auto b) {
      return std::abs(a - w) < std::abs(b - w);
    });
    worst = std::max(worst, std::abs(*it - w));
    got.erase(it);
  }
  return worst;
}

}  // namespace perturb::testing
