#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>

#include <gmpxx.h>

namespace perturb {

/// Exact element re + im*i of Q(i). Both parts are kept in canonical GMP
/// form (reduced, positive denominator).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(implicit)
  GaussianRational(mpq_class re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  GaussianRational(mpq_class re, mpq_class im);

  /// Fraction num/den with den != 0.
  static GaussianRational fraction(long num, long den);
  static GaussianRational imaginary_unit() { return {mpq_class(0), mpq_class(1)}; }

  const mpq_class& real() const noexcept { return re_; }
  const mpq_class& imag() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_integer() const;

  GaussianRational conj() const { return {re_, -im_}; }
  /// Squared modulus re^2 + im^2.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Rendering in the expression grammar: "3", "-2/3", "i", "2/3*i", "(1+2i)".
  /// `parenthesize` wraps values with both parts nonzero.
  std::string to_string(bool parenthesize = true) const;

  std::size_t hash() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// n! as an exact integer.
GaussianRational factorial(unsigned n);

}  // namespace perturb
