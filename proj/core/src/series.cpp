#include "perturb/series.hpp"

#include <algorithm>
#include <numeric>

#include "perturb/error.hpp"

namespace perturb {

SeriesRing::SeriesRing(std::vector<std::string> generators, int truncation)
    : generators_(std::move(generators)), truncation_(truncation) {
  if (truncation_ < 1) throw DomainError("truncation order must be at least 1");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      if (generators_[i] == generators_[j]) {
        throw DomainError("duplicate generator '" + generators_[i] + "'");
      }
    }
  }
}

RingPtr SeriesRing::make(std::vector<std::string> generators, int truncation) {
  return std::make_shared<const SeriesRing>(std::move(generators), truncation);
}

RingPtr SeriesRing::univariate(int truncation, std::string name) {
  return make({std::move(name)}, truncation);
}

std::optional<std::size_t> SeriesRing::index_of(std::string_view name) const {
  auto it = std::find(generators_.begin(), generators_.end(), name);
  if (it == generators_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - generators_.begin());
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

namespace {

void require_same_ring(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!same_ring(a.ring(), b.ring())) {
    throw IncompatibleRing("series belong to different rings (generators or truncation differ)");
  }
}

}  // namespace

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GradedOrder::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

TruncatedSeries::TruncatedSeries(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw DomainError("series requires a ring");
}

TruncatedSeries::TruncatedSeries(RingPtr ring, const GaussianRational& constant)
    : TruncatedSeries(std::move(ring)) {
  if (!constant.is_zero()) terms_.emplace(Exponent(ring_->arity(), 0), constant);
}

TruncatedSeries TruncatedSeries::generator(const RingPtr& ring, std::string_view name) {
  auto idx = ring->index_of(name);
  if (!idx) throw DomainError("unknown generator '" + std::string(name) + "'");
  return generator(ring, *idx);
}

TruncatedSeries TruncatedSeries::generator(const RingPtr& ring, std::size_t index) {
  Exponent e(ring->arity(), 0);
  e.at(index) = 1;
  return monomial(ring, std::move(e), 1);
}

TruncatedSeries TruncatedSeries::monomial(const RingPtr& ring, Exponent exponent,
                                          const GaussianRational& coefficient) {
  if (exponent.size() != ring->arity()) throw DomainError("exponent arity mismatch");
  TruncatedSeries s(ring);
  s.add_term(exponent, coefficient);
  return s;
}

bool TruncatedSeries::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

std::optional<int> TruncatedSeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return total_degree(terms_.begin()->first);
}

bool TruncatedSeries::is_infinitesimal() const {
  auto v = valuation();
  return !v || *v >= 1;
}

GaussianRational TruncatedSeries::standard_part() const {
  if (terms_.empty() || total_degree(terms_.begin()->first) != 0) return {};
  return terms_.begin()->second;
}

GaussianRational TruncatedSeries::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

TruncatedSeries TruncatedSeries::homogeneous_part(int degree) const {
  TruncatedSeries out(ring_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == degree) out.terms_.emplace(e, c);
  }
  return out;
}

TruncatedSeries TruncatedSeries::leading_part() const {
  auto v = valuation();
  return v ? homogeneous_part(*v) : TruncatedSeries(ring_);
}

void TruncatedSeries::add_term(const Exponent& e, const GaussianRational& c) {
  if (c.is_zero() || total_degree(e) > ring_->truncation()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_same_ring(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  require_same_ring(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_ring(a, b);
  const int trunc = a.ring_->truncation();
  TruncatedSeries out(a.ring_);
  Exponent e(a.ring_->arity());
  for (const auto& [ea, ca] : a.terms_) {
    const int da = total_degree(ea);
    if (da > trunc) break;
    for (const auto& [eb, cb] : b.terms_) {
      // Terms are visited in increasing total degree.
      if (da + total_degree(eb) > trunc) break;
      for (std::size_t g = 0; g < e.size(); ++g) e[g] = ea[g] + eb[g];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& o) {
  *this = *this * o;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

TruncatedSeries TruncatedSeries::pow(unsigned exponent) const {
  TruncatedSeries result(ring_, 1);
  TruncatedSeries base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

namespace {

std::string monomial_string(const SeriesRing& ring, const Exponent& e) {
  std::string s;
  for (std::size_t g = 0; g < e.size(); ++g) {
    if (e[g] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.generators()[g];
    if (e[g] > 1) s += "^" + std::to_string(e[g]);
  }
  return s;
}

}  // namespace

std::string TruncatedSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    const std::string mono = monomial_string(*ring_, e);
    std::string term;
    if (mono.empty()) {
      term = c.to_string();
    } else if (c.is_one()) {
      term = mono;
    } else if ((-c).is_one()) {
      term = "-" + mono;
    } else {
      const bool juxtapose = c.is_real() && c.is_integer() && mono.front() != 'e';
      term = c.to_string() + (juxtapose ? "" : "*") + mono;
    }
    if (!out.empty() && term.front() != '-') out += '+';
    out += term;
  }
  return out;
}

TruncatedSeries arith(Arith kind, const TruncatedSeries& a, const TruncatedSeries& b) {
  switch (kind) {
    case Arith::add: return a + b;
    case Arith::sub: return a - b;
    case Arith::mul: return a * b;
  }
  return a * b;
}

TruncatedSeries invert(const TruncatedSeries& a) {
  const GaussianRational c0 = a.standard_part();
  if (c0.is_zero()) {
    throw NonUnit("series " + a.to_string() + " has zero constant term and is not a unit");
  }
  const GaussianRational c0_inv = c0.inverse();
  // a = c0 (1 + m), v(m) >= 1, so (1 + m)^-1 = sum_j (-m)^j stops at j = T.
  TruncatedSeries minus_m = TruncatedSeries(a.ring(), 1) - a * c0_inv;
  TruncatedSeries result(a.ring(), 1);
  TruncatedSeries power(a.ring(), 1);
  for (int j = 1; j <= a.ring()->truncation() && !power.is_zero(); ++j) {
    power *= minus_m;
    result += power;
  }
  return result * c0_inv;
}

TruncatedSeries specialize(const TruncatedSeries& a,
                           const std::map<std::string, TruncatedSeries>& images) {
  const auto& gens = a.ring()->generators();
  std::vector<const TruncatedSeries*> image(gens.size(), nullptr);
  RingPtr target;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    auto it = images.find(gens[g]);
    if (it == images.end()) throw DomainError("generator '" + gens[g] + "' is not mapped");
    if (!it->second.is_infinitesimal()) {
      throw DomainError("image of '" + gens[g] + "' is not infinitesimal: " +
                        it->second.to_string());
    }
    if (target && !same_ring(target, it->second.ring())) {
      throw IncompatibleRing("specialization images live in different rings");
    }
    target = it->second.ring();
    image[g] = &it->second;
  }
  if (!target) {
    if (images.empty()) throw DomainError("specialization of a constant series needs a target ring");
    target = images.begin()->second.ring();
  }

  // powers[g][k] = image_g^k, grown on demand
  std::vector<std::vector<TruncatedSeries>> powers(gens.size());
  auto power_of = [&](std::size_t g, int k) -> const TruncatedSeries& {
    auto& cache = powers[g];
    if (cache.empty()) cache.emplace_back(target, 1);
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * *image[g]);
    return cache[static_cast<std::size_t>(k)];
  };

  TruncatedSeries out(target);
  for (const auto& [e, c] : a.terms()) {
    TruncatedSeries term(target, c);
    for (std::size_t g = 0; g < e.size() && !term.is_zero(); ++g) {
      if (e[g] > 0) term *= power_of(g, e[g]);
    }
    out += term;
  }
  return out;
}

std::complex<double> numeric_sample(const TruncatedSeries& a,
                                    std::span<const std::complex<double>> values) {
  if (values.size() != a.ring()->arity()) {
    throw DomainError("numeric_sample needs one value per generator");
  }
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : a.terms()) {
    std::complex<double> term = c.to_complex();
    for (std::size_t g = 0; g < e.size(); ++g) {
      for (int k = 0; k < e[g]; ++k) term *= values[g];
    }
    sum += term;
  }
  return sum;
}

std::complex<double> numeric_sample(const TruncatedSeries& a, std::complex<double> t0) {
  std::vector<std::complex<double>> values(a.ring()->arity(), t0);
  return numeric_sample(a, values);
}

std::string_view to_string(Magnitude m) {
  switch (m) {
    case Magnitude::infinitesimal: return "infinitesimal";
    case Magnitude::appreciable: return "appreciable";
    case Magnitude::infinitely_large: return "infinitely_large";
    case Magnitude::zero: return "zero";
  }
  return "zero";
}

namespace {

TruncatedSeries shift_down(const TruncatedSeries& a, int by) {
  TruncatedSeries out(a.ring());
  for (const auto& [e, c] : a.terms()) out.add_term(Exponent{e.at(0) - by}, c);
  return out;
}

void require_univariate(const RingPtr& ring) {
  if (ring->arity() != 1) {
    throw DomainError("Laurent scalars need a single-generator ring; specialize first");
  }
}

}  // namespace

LaurentScalar::LaurentScalar(int shift, TruncatedSeries body)
    : shift_(shift), body_(std::move(body)) {
  require_univariate(body_.ring());
  if (body_.is_zero()) {
    shift_ = 0;
    return;
  }
  const int v = *body_.valuation();
  if (v > 0) {
    shift_ += v;
    body_ = shift_down(body_, v);
  }
}

LaurentScalar LaurentScalar::from_series(const TruncatedSeries& a) { return {0, a}; }

LaurentScalar LaurentScalar::inverse() const {
  if (is_zero()) throw NonUnit("inverse of zero Laurent scalar");
  return {-shift_, invert(body_)};
}

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
  return {a.shift_ + b.shift_, a.body_ * b.body_};
}

TruncatedSeries LaurentScalar::to_series() const {
  if (is_zero()) return body_;
  if (shift_ < 0) {
    throw DomainError("Laurent scalar with negative shift is infinitely large, not in the valuation ring");
  }
  return body_ * TruncatedSeries::monomial(body_.ring(), Exponent{shift_}, 1);
}

Magnitude classify(const LaurentScalar& x) {
  if (x.is_zero()) return Magnitude::zero;
  const int order = x.shift() + *x.body().valuation();
  if (order >= 1) return Magnitude::infinitesimal;
  if (order == 0) return Magnitude::appreciable;
  return Magnitude::infinitely_large;
}

}  // namespace perturb
