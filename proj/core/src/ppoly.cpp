#include "perturb/ppoly.hpp"

#include <algorithm>

#include "perturb/error.hpp"

namespace perturb {

PerturbedPolynomial::PerturbedPolynomial(RingPtr ring, std::string var)
    : ring_(std::move(ring)), var_(std::move(var)) {}

PerturbedPolynomial::PerturbedPolynomial(RingPtr ring, std::vector<TruncatedSeries> coeffs,
                                         std::string var)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)), var_(std::move(var)) {
  for (const auto& c : coeffs_) {
    if (!same_ring(c.ring(), ring_)) throw IncompatibleRing("polynomial coefficients belong to different rings");
  }
  normalize();
}

PerturbedPolynomial PerturbedPolynomial::from_exact(const ExactPoly& p, const RingPtr& ring) {
  std::vector<TruncatedSeries> coeffs;
  coeffs.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) coeffs.emplace_back(ring, c);
  return {ring, std::move(coeffs), p.var()};
}

void PerturbedPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

TruncatedSeries PerturbedPolynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return TruncatedSeries(ring_);
  return coeffs_[static_cast<std::size_t>(k)];
}

TruncatedSeries PerturbedPolynomial::leading() const {
  return coeffs_.empty() ? TruncatedSeries(ring_) : coeffs_.back();
}

PerturbedPolynomial PerturbedPolynomial::with_var(std::string var) const {
  PerturbedPolynomial p = *this;
  p.var_ = std::move(var);
  return p;
}

PerturbedPolynomial PerturbedPolynomial::operator-() const {
  PerturbedPolynomial p = *this;
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

PerturbedPolynomial operator+(const PerturbedPolynomial& a, const PerturbedPolynomial& b) {
  if (!same_ring(a.ring_, b.ring_)) throw IncompatibleRing("polynomials belong to different rings");
  std::vector<TruncatedSeries> out(std::max(a.coeffs_.size(), b.coeffs_.size()),
                                   TruncatedSeries(a.ring_));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
  return {a.ring_, std::move(out), a.var_};
}

PerturbedPolynomial operator-(const PerturbedPolynomial& a, const PerturbedPolynomial& b) {
  return a + (-b);
}

PerturbedPolynomial operator*(const PerturbedPolynomial& a, const PerturbedPolynomial& b) {
  if (!same_ring(a.ring_, b.ring_)) throw IncompatibleRing("polynomials belong to different rings");
  if (a.is_zero() || b.is_zero()) return PerturbedPolynomial(a.ring_, a.var_);
  std::vector<TruncatedSeries> out(a.coeffs_.size() + b.coeffs_.size() - 1, TruncatedSeries(a.ring_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return {a.ring_, std::move(out), a.var_};
}

PerturbedPolynomial operator*(const TruncatedSeries& c, const PerturbedPolynomial& a) {
  std::vector<TruncatedSeries> out;
  out.reserve(a.coeffs_.size());
  for (const auto& x : a.coeffs_) out.push_back(c * x);
  return {a.ring_, std::move(out), a.var_};
}

bool operator==(const PerturbedPolynomial& a, const PerturbedPolynomial& b) {
  return same_ring(a.ring_, b.ring_) && a.coeffs_ == b.coeffs_;
}

namespace {

bool is_plain_integer(const std::string& s) {
  auto digits = s.front() == '-' ? s.substr(1) : s;
  return !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char ch) {
    return ch >= '0' && ch <= '9';
  });
}

}  // namespace

std::string PerturbedPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const TruncatedSeries& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string mono;
    if (k >= 1) mono = var_;
    if (k >= 2) mono += "^" + std::to_string(k);
    const std::string s = c.to_string();
    std::string term;
    if (mono.empty()) {
      term = s;
    } else if (c.terms().size() > 1) {
      term = "(" + s + ")*" + mono;
    } else if (s == "1") {
      term = mono;
    } else if (s == "-1") {
      term = "-" + mono;
    } else if (is_plain_integer(s)) {
      term = s + mono;
    } else {
      term = s + "*" + mono;
    }
    if (!out.empty() && term.front() != '-') out += '+';
    out += term;
  }
  return out;
}

TruncatedSeries evaluate(const PerturbedPolynomial& p, const TruncatedSeries& x) {
  if (!same_ring(p.ring(), x.ring())) throw IncompatibleRing("evaluation point belongs to a different ring");
  TruncatedSeries acc(p.ring());
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

TruncatedSeries evaluate(const PerturbedPolynomial& p, const GaussianRational& x) {
  TruncatedSeries acc(p.ring());
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

PerturbedPolynomial derivative(const PerturbedPolynomial& p, unsigned m) {
  std::vector<TruncatedSeries> out;
  for (std::size_t k = m; k < p.coeffs().size(); ++k) {
    mpz_class falling = 1;
    for (unsigned j = 0; j < m; ++j) falling *= static_cast<unsigned long>(k - j);
    out.push_back(p.coeffs()[k] * GaussianRational(mpq_class(falling)));
  }
  return {p.ring(), std::move(out), p.var()};
}

ExactPoly shadow_poly(const PerturbedPolynomial& p) {
  std::vector<GaussianRational> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.standard_part());
  return ExactPoly(std::move(out), p.var());
}

bool is_infinitesimal_poly(const PerturbedPolynomial& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(),
                     [](const TruncatedSeries& c) { return c.is_infinitesimal(); });
}

std::size_t strip_infinitesimal_leading(PerturbedPolynomial& p) {
  std::vector<TruncatedSeries> coeffs = p.coeffs();
  std::size_t removed = 0;
  while (!coeffs.empty() && coeffs.back().is_infinitesimal()) {
    coeffs.pop_back();
    ++removed;
  }
  if (removed > 0) p = PerturbedPolynomial(p.ring(), std::move(coeffs), p.var());
  return removed;
}

Division euclid_divide(const PerturbedPolynomial& a, const PerturbedPolynomial& b) {
  if (!same_ring(a.ring(), b.ring())) throw IncompatibleRing("polynomials belong to different rings");
  if (b.is_zero()) throw NonUnit("polynomial division by zero");
  if (!b.leading().is_unit()) {
    throw NonUnit("leading coefficient " + b.leading().to_string() +
                  " of the divisor is not a unit");
  }
  const TruncatedSeries lead_inv = invert(b.leading());
  const int db = b.degree();
  std::vector<TruncatedSeries> rem = a.coeffs();
  std::vector<TruncatedSeries> quo(static_cast<std::size_t>(std::max(a.degree() - db + 1, 0)),
                                   TruncatedSeries(a.ring()));
  for (int d = a.degree(); d >= db; --d) {
    auto& top = rem[static_cast<std::size_t>(d)];
    if (top.is_zero()) continue;
    const TruncatedSeries c = top * lead_inv;
    quo[static_cast<std::size_t>(d - db)] = c;
    for (int j = 0; j < db; ++j) {
      rem[static_cast<std::size_t>(d - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
    // lead(b) * lead_inv == 1 exactly in the truncated ring.
    top = TruncatedSeries(a.ring());
  }
  rem.resize(static_cast<std::size_t>(std::max(std::min(a.degree() + 1, db), 0)), TruncatedSeries(a.ring()));
  return {PerturbedPolynomial(a.ring(), std::move(quo), a.var()),
          PerturbedPolynomial(a.ring(), std::move(rem), a.var())};
}

PgcdResult pgcd(const PerturbedPolynomial& a, const PerturbedPolynomial& b) {
  if (a.is_zero() || b.is_zero()) throw DomainError("pgcd needs two nonzero polynomials");
  if (!same_ring(a.ring(), b.ring())) throw IncompatibleRing("polynomials belong to different rings");

  if (is_infinitesimal_poly(a) && is_infinitesimal_poly(b)) {
    throw DomainError("both polynomials are wholly infinitesimal; no remainder is appreciable");
  }

  PgcdResult result{PerturbedPolynomial(a.ring(), a.var()), {}, 0};
  PerturbedPolynomial prev = a.degree() >= b.degree() ? a : b;
  PerturbedPolynomial cur = a.degree() >= b.degree() ? b : a;

  while (!is_infinitesimal_poly(cur)) {
    RemainderStep step{prev, cur, PerturbedPolynomial(a.ring(), a.var()),
                       PerturbedPolynomial(a.ring(), a.var()), 0, false};
    step.stripped = strip_infinitesimal_leading(step.divisor);
    Division div = euclid_divide(prev, step.divisor);
    step.quotient = div.quotient;
    step.remainder = div.remainder;
    step.remainder_infinitesimal = is_infinitesimal_poly(div.remainder);
    prev = step.divisor;
    cur = std::move(div.remainder);
    result.trace.push_back(std::move(step));
  }
  result.stripped = strip_infinitesimal_leading(prev);
  result.pgcd = std::move(prev);
  return result;
}

std::string RootAsymptotics::statement() const {
  std::string lhs = order == 1 ? "xi" : "xi^" + std::to_string(order);
  if (linear && !linear->is_zero()) {
    const std::string s = linear->to_string();
    const bool single = linear->terms().size() == 1;
    lhs += (single && s.front() == '-') ? s + "*xi" : "+" + (single ? s : "(" + s + ")") + "*xi";
  }
  return lhs + " ~ " + rhs.to_string();
}

namespace {

void require_exact_root(const ExactPoly& p, const GaussianRational& u) {
  if (p.is_zero()) throw DomainError("base polynomial is zero");
  if (!p.evaluate(u).is_zero()) {
    throw DomainError(u.to_string() + " is not a root of " + p.to_string());
  }
}

/// Leading homogeneous part of a/b when that quotient is a polynomial.
TruncatedSeries leading_quotient(const TruncatedSeries& a, const TruncatedSeries& b) {
  const TruncatedSeries al = a.leading_part();
  const TruncatedSeries bl = b.leading_part();
  if (bl.terms().size() != 1) {
    if (a.ring()->arity() == 1) {
      return (LaurentScalar::from_series(a) / LaurentScalar::from_series(b)).to_series().leading_part();
    }
    throw DomainError("leading quotient of multivariate series needs a monomial divisor; specialize first");
  }
  const auto& [eb, cb] = *bl.terms().begin();
  TruncatedSeries out(a.ring());
  for (const auto& [ea, ca] : al.terms()) {
    Exponent e(ea.size());
    for (std::size_t g = 0; g < e.size(); ++g) {
      e[g] = ea[g] - eb[g];
      if (e[g] < 0) {
        throw DomainError("leading quotient " + al.to_string() + " / " + bl.to_string() +
                          " is not a polynomial; specialize first");
      }
    }
    out.add_term(e, ca / cb);
  }
  return out;
}

}  // namespace

TruncatedSeries apply_root_sensitivity(const ExactPoly& p, const GaussianRational& u,
                                       const PerturbedPolynomial& h) {
  require_exact_root(p, u);
  const unsigned r = root_multiplicity(p, u);
  const GaussianRational scale = -factorial(r) / p.derivative(r).evaluate(u);
  return evaluate(h, u) * scale;
}

RootAsymptotics root_correction(const ExactPoly& p, const PerturbedPolynomial& xi,
                                const GaussianRational& u, unsigned k,
                                const GozeDecomposition* goze) {
  if (k == 0) throw DomainError("root order must be at least 1");
  require_exact_root(p, u);
  if (!is_infinitesimal_poly(xi)) {
    throw DomainError("perturbation " + xi.to_string() + " is not wholly infinitesimal");
  }
  for (unsigned j = 1; j < k; ++j) {
    if (!p.derivative(j).evaluate(u).is_zero()) {
      throw DomainError("multiplicity misdeclared: " + u.to_string() + " is a root of order " +
                        std::to_string(root_multiplicity(p, u)) + ", not " + std::to_string(k));
    }
  }
  const GaussianRational dk = p.derivative(k).evaluate(u);
  if (dk.is_zero()) {
    throw DomainError("multiplicity misdeclared: P^(" + std::to_string(k) + ")(" + u.to_string() +
                      ") = 0");
  }
  const GaussianRational scale = -factorial(k) / dk;

  RootAsymptotics out{u, k, TruncatedSeries(xi.ring()), std::nullopt, std::nullopt};
  const TruncatedSeries value = evaluate(xi, u);
  if (value.is_zero()) {
    throw Degenerate("Xi(" + u.to_string() +
                     ") vanishes up to the truncation order; use the dominant balance");
  }
  // xi^k ~ rhs needs every term Xi^(j)(u) xi^j / j! to be negligible, i.e. the
  // point (j, v_j) must lie strictly above the segment from (0, v_0) to (k, 0).
  const int v0 = *value.valuation();
  for (unsigned j = 1; j < k; ++j) {
    const auto vj = evaluate(derivative(xi, j), u).valuation();
    if (vj && static_cast<long>(k) * *vj <= static_cast<long>(v0) * (k - j)) {
      throw Degenerate("Xi^(" + std::to_string(j) + ")(" + u.to_string() +
                       ") competes with Xi(u) at leading order; use the dominant balance");
    }
  }
  if (goze == nullptr) {
    out.rhs = (value * scale).leading_part();
    return out;
  }

  if (!same_ring(goze->ring, xi.ring())) {
    throw IncompatibleRing("Goze decomposition and perturbation belong to different rings");
  }
  std::vector<TruncatedSeries> coeffs(goze->dimension, TruncatedSeries(xi.ring()));
  if (static_cast<int>(goze->dimension) < xi.degree() + 1) {
    throw DomainError("Goze decomposition is shorter than the coefficient vector of Xi");
  }
  for (int i = 0; i <= xi.degree(); ++i) coeffs[static_cast<std::size_t>(i)] = xi.coeff(i);
  if (reconstruct(*goze) != coeffs) {
    throw DomainError("Goze decomposition does not reconstruct the coefficients of Xi");
  }
  TruncatedSeries scale_product(xi.ring(), 1);
  for (std::size_t j = 0; j < goze->levels.size(); ++j) {
    const auto& level = goze->levels[j];
    scale_product *= level.alpha;
    const GaussianRational uj = ExactPoly(level.direction).evaluate(u);
    if (!uj.is_zero()) {
      out.leading_level = j;
      out.rhs = scale_product * (scale * uj);
      return out;
    }
  }
  throw Degenerate("every Goze direction polynomial vanishes at " + u.to_string());
}

std::vector<RootAsymptotics> dominant_balance(const ExactPoly& p, const PerturbedPolynomial& xi,
                                              const GaussianRational& u) {
  require_exact_root(p, u);
  if (!p.derivative(1).evaluate(u).is_zero()) {
    throw DomainError(u.to_string() + " is a simple root; use root_correction");
  }
  const GaussianRational p2 = p.derivative(2).evaluate(u);
  if (p2.is_zero()) throw DomainError("dominant balance supports double roots only (P''(u) = 0)");
  if (!is_infinitesimal_poly(xi)) {
    throw DomainError("perturbation " + xi.to_string() + " is not wholly infinitesimal");
  }

  const RingPtr& ring = xi.ring();
  const TruncatedSeries a = evaluate(xi, u);
  const TruncatedSeries b = evaluate(derivative(xi), u);
  const GaussianRational c_inv = (p2 / 2).inverse();

  auto make = [&](unsigned order, TruncatedSeries rhs) {
    return RootAsymptotics{u, order, std::move(rhs), std::nullopt, std::nullopt};
  };

  if (a.is_zero() && b.is_zero()) {
    throw Degenerate("Xi(u) and Xi'(u) both vanish up to the truncation order");
  }
  if (a.is_zero()) {
    // xi (Xi'(u) + xi P''(u)/2) ~ 0
    return {make(1, TruncatedSeries(ring)), make(1, (b * -c_inv).leading_part())};
  }
  if (b.is_zero()) return {make(2, (a * -c_inv).leading_part())};

  const int va = *a.valuation();
  const int vb = *b.valuation();
  if (va < 2 * vb) return {make(2, (a * -c_inv).leading_part())};
  if (va > 2 * vb) {
    // One branch of size Xi'(u), one of size Xi(u)/Xi'(u).
    return {make(1, (b * -c_inv).leading_part()), make(1, -leading_quotient(a, b))};
  }
  RootAsymptotics balanced = make(2, (a * -c_inv).leading_part());
  balanced.linear = (b * c_inv).leading_part();
  return {balanced};
}

}  // namespace perturb
