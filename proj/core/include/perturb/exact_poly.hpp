#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "perturb/gaussian_rational.hpp"

namespace perturb {

/// Dense univariate polynomial over Q(i); coeffs[k] multiplies X^k. The
/// zero polynomial has no coefficients and degree -1.
class ExactPoly {
 public:
  ExactPoly() = default;
  explicit ExactPoly(std::vector<GaussianRational> coeffs, std::string var = "X");

  static ExactPoly constant(const GaussianRational& c, std::string var = "X");
  /// X - root
  static ExactPoly linear_factor(const GaussianRational& root, std::string var = "X");

  const std::vector<GaussianRational>& coeffs() const noexcept { return coeffs_; }
  const std::string& var() const noexcept { return var_; }
  ExactPoly with_var(std::string var) const;

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  GaussianRational coeff(int k) const;
  GaussianRational leading() const;

  GaussianRational evaluate(const GaussianRational& x) const;
  std::complex<double> evaluate(std::complex<double> x) const;
  ExactPoly derivative(unsigned m = 1) const;
  ExactPoly monic() const;

  ExactPoly operator-() const;
  friend ExactPoly operator+(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator-(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator*(const GaussianRational& c, const ExactPoly& a);
  friend bool operator==(const ExactPoly& a, const ExactPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void normalize();

  std::vector<GaussianRational> coeffs_;
  std::string var_ = "X";
};

/// Euclidean division over the field; throws NonUnit for a zero divisor.
std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b);

/// Monic greatest common divisor (zero iff both inputs are zero).
ExactPoly gcd(const ExactPoly& a, const ExactPoly& b);

/// Multiplicity of `root` as a zero of p (0 when p(root) != 0). p must be nonzero.
unsigned root_multiplicity(const ExactPoly& p, const GaussianRational& root);

/// Exact rational function num/den kept coprime with a monic denominator.
class ExactRational {
 public:
  ExactRational(ExactPoly num, ExactPoly den);

  const ExactPoly& num() const noexcept { return num_; }
  const ExactPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  std::complex<double> evaluate(std::complex<double> x) const;

  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// "(num)/(den)", or just "num" when den == 1.
  std::string to_string() const;

 private:
  ExactPoly num_;
  ExactPoly den_;
};

}  // namespace perturb
