#pragma once

// Truncated multivariate power series over Q(i): the valuation ring
// K[[e1,...,em]] modulo terms of total degree > T.

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perturb/gaussian_rational.hpp"

namespace perturb {

inline constexpr int kDefaultTruncation = 8;

class SeriesRing;
using RingPtr = std::shared_ptr<const SeriesRing>;

/// Ordered generator names plus the total-degree truncation bound T.
class SeriesRing {
 public:
  SeriesRing(std::vector<std::string> generators, int truncation);

  static RingPtr make(std::vector<std::string> generators,
                      int truncation = kDefaultTruncation);
  /// The one-generator ring in `t` used for Goze decompositions and the oracle.
  static RingPtr univariate(int truncation = kDefaultTruncation,
                            std::string name = "t");

  const std::vector<std::string>& generators() const noexcept { return generators_; }
  std::size_t arity() const noexcept { return generators_.size(); }
  int truncation() const noexcept { return truncation_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool operator==(const SeriesRing&) const = default;

 private:
  std::vector<std::string> generators_;
  int truncation_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

/// Exponent vector, one entry per generator of the ring.
using Exponent = std::vector<int>;

int total_degree(const Exponent& e);

/// Total degree first; within a degree, larger exponents of earlier generators first.
struct GradedOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

class TruncatedSeries {
 public:
  using TermMap = std::map<Exponent, GaussianRational, GradedOrder>;

  explicit TruncatedSeries(RingPtr ring);
  TruncatedSeries(RingPtr ring, const GaussianRational& constant);

  static TruncatedSeries generator(const RingPtr& ring, std::string_view name);
  static TruncatedSeries generator(const RingPtr& ring, std::size_t index);
  static TruncatedSeries monomial(const RingPtr& ring, Exponent exponent,
                                  const GaussianRational& coefficient);

  const RingPtr& ring() const noexcept { return ring_; }
  const TermMap& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Lowest total degree of a nonzero term; nullopt stands for +infinity.
  std::optional<int> valuation() const;
  /// Member of the maximal ideal (zero included).
  bool is_infinitesimal() const;
  bool is_unit() const { return !standard_part().is_zero(); }
  GaussianRational standard_part() const;
  GaussianRational coefficient(const Exponent& e) const;

  /// Homogeneous component of the given total degree.
  TruncatedSeries homogeneous_part(int degree) const;
  /// Homogeneous component of degree valuation(); zero for zero.
  TruncatedSeries leading_part() const;

  /// Adds c * monomial, dropping it when its degree exceeds T.
  void add_term(const Exponent& e, const GaussianRational& c);

  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const GaussianRational& c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(TruncatedSeries a, const GaussianRational& c) { return a *= c; }
  friend TruncatedSeries operator*(const GaussianRational& c, TruncatedSeries a) { return a *= c; }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  TruncatedSeries pow(unsigned exponent) const;

  /// Rendering in the expression grammar, lowest degree first ("t+2t^2").
  std::string to_string() const;

 private:
  RingPtr ring_;
  TermMap terms_;
};

enum class Arith { add, sub, mul };

TruncatedSeries arith(Arith kind, const TruncatedSeries& a, const TruncatedSeries& b);

inline std::optional<int> valuation(const TruncatedSeries& a) { return a.valuation(); }

/// Inverse of a unit via the geometric series of (c0 (1 + m))^-1.
/// Throws NonUnit when the constant term vanishes.
TruncatedSeries invert(const TruncatedSeries& a);

inline GaussianRational standard_part(const TruncatedSeries& a) { return a.standard_part(); }

/// Substitutes every generator of `a` by an infinitesimal series of a common
/// target ring.
TruncatedSeries specialize(const TruncatedSeries& a,
                           const std::map<std::string, TruncatedSeries>& images);

/// Floating-point value with generator g set to values[g].
std::complex<double> numeric_sample(const TruncatedSeries& a,
                                    std::span<const std::complex<double>> values);
/// Floating-point value with every generator set to t0.
std::complex<double> numeric_sample(const TruncatedSeries& a, std::complex<double> t0);

enum class Magnitude { infinitesimal, appreciable, infinitely_large, zero };

std::string_view to_string(Magnitude m);

/// Element t^shift * body of the Laurent field K((t)), with body a unit (or zero).
class LaurentScalar {
 public:
  LaurentScalar(int shift, TruncatedSeries body);

  /// Factors out t^valuation from a univariate series.
  static LaurentScalar from_series(const TruncatedSeries& a);

  int shift() const noexcept { return shift_; }
  const TruncatedSeries& body() const noexcept { return body_; }
  bool is_zero() const noexcept { return body_.is_zero(); }

  LaurentScalar inverse() const;
  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);
  friend LaurentScalar operator/(const LaurentScalar& a, const LaurentScalar& b) {
    return a * b.inverse();
  }

  /// Back into the valuation ring; requires shift >= 0 (or zero).
  TruncatedSeries to_series() const;

 private:
  int shift_;
  TruncatedSeries body_;
};

Magnitude classify(const LaurentScalar& x);

}  // namespace perturb
