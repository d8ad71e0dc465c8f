#pragma once

// Polynomials whose coefficients are truncated series (elements of *K[X]):
// Euclidean division, PGCD, and the asymptotics of perturbed roots.

#include <optional>
#include <string>
#include <vector>

#include "perturb/exact_poly.hpp"
#include "perturb/goze.hpp"
#include "perturb/series.hpp"

namespace perturb {

class PerturbedPolynomial {
 public:
  explicit PerturbedPolynomial(RingPtr ring, std::string var = "X");
  PerturbedPolynomial(RingPtr ring, std::vector<TruncatedSeries> coeffs, std::string var = "X");

  static PerturbedPolynomial from_exact(const ExactPoly& p, const RingPtr& ring);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::string& var() const noexcept { return var_; }
  const std::vector<TruncatedSeries>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Coefficient of X^k (zero outside the stored range).
  TruncatedSeries coeff(int k) const;
  TruncatedSeries leading() const;

  PerturbedPolynomial with_var(std::string var) const;

  PerturbedPolynomial operator-() const;
  friend PerturbedPolynomial operator+(const PerturbedPolynomial& a, const PerturbedPolynomial& b);
  friend PerturbedPolynomial operator-(const PerturbedPolynomial& a, const PerturbedPolynomial& b);
  friend PerturbedPolynomial operator*(const PerturbedPolynomial& a, const PerturbedPolynomial& b);
  friend PerturbedPolynomial operator*(const TruncatedSeries& c, const PerturbedPolynomial& a);
  friend bool operator==(const PerturbedPolynomial& a, const PerturbedPolynomial& b);

  /// "X^2+e3*X-1", "(1-e1+e3^2)*X-1+e2-e3".
  std::string to_string() const;

 private:
  void normalize();

  RingPtr ring_;
  std::vector<TruncatedSeries> coeffs_;
  std::string var_;
};

/// Horner evaluation.
TruncatedSeries evaluate(const PerturbedPolynomial& p, const TruncatedSeries& x);
TruncatedSeries evaluate(const PerturbedPolynomial& p, const GaussianRational& x);

PerturbedPolynomial derivative(const PerturbedPolynomial& p, unsigned m = 1);

/// Coefficientwise standard part; the degree may drop.
ExactPoly shadow_poly(const PerturbedPolynomial& p);

/// True iff every coefficient lies in the maximal ideal.
bool is_infinitesimal_poly(const PerturbedPolynomial& p);

/// Drops leading coefficients that are infinitesimal. Returns how many were removed.
std::size_t strip_infinitesimal_leading(PerturbedPolynomial& p);

struct Division {
  PerturbedPolynomial quotient;
  PerturbedPolynomial remainder;
};

/// a = b q + r exactly in the truncated ring, deg r < deg b. The leading
/// coefficient of b must be a unit.
Division euclid_divide(const PerturbedPolynomial& a, const PerturbedPolynomial& b);

struct RemainderStep {
  PerturbedPolynomial dividend;
  PerturbedPolynomial divisor;
  PerturbedPolynomial quotient;
  PerturbedPolynomial remainder;
  /// Infinitesimal leading coefficients removed from the divisor before dividing.
  std::size_t stripped = 0;
  bool remainder_infinitesimal = false;
};

struct PgcdResult {
  PerturbedPolynomial pgcd;
  std::vector<RemainderStep> trace;
  /// Infinitesimal leading coefficients removed from the returned polynomial.
  std::size_t stripped = 0;
};

/// Last Euclidean remainder that is not wholly infinitesimal.
PgcdResult pgcd(const PerturbedPolynomial& a, const PerturbedPolynomial& b);

/// Leading-order statement about a perturbed root u + xi:
///   xi^order (+ linear * xi) ~ rhs.
struct RootAsymptotics {
  GaussianRational base_root;
  unsigned order = 1;
  TruncatedSeries rhs;
  /// Present only for the balanced double-root case xi^2 + linear*xi ~ rhs.
  std::optional<TruncatedSeries> linear;
  /// Index (0-based) of the first Goze level whose direction polynomial does not vanish at u.
  std::optional<std::size_t> leading_level;

  std::string statement() const;
};

/// L(H) = -r! H(u) / P^(r)(u), with r the multiplicity of u in P.
TruncatedSeries apply_root_sensitivity(const ExactPoly& p, const GaussianRational& u,
                                       const PerturbedPolynomial& h);

/// xi^k ~ -k! Xi(u) / P^(k)(u) at leading order. With a Goze decomposition of
/// Xi's coefficient vector the rhs is -k! a1...a_j0 U_j0(u) / P^(k)(u).
/// Throws Degenerate when Xi(u) vanishes up to T (see dominant_balance).
RootAsymptotics root_correction(const ExactPoly& p, const PerturbedPolynomial& xi,
                                const GaussianRational& u, unsigned k,
                                const GozeDecomposition* goze = nullptr);

/// Leading-order branches of the balance Xi(u) + xi Xi'(u) + xi^2 P''(u)/2 ~ 0
/// around a double root u.
std::vector<RootAsymptotics> dominant_balance(const ExactPoly& p, const PerturbedPolynomial& xi,
                                              const GaussianRational& u);

}  // namespace perturb
