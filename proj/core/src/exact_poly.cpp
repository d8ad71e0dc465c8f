#include "perturb/exact_poly.hpp"

#include <algorithm>

#include "perturb/error.hpp"

namespace perturb {

ExactPoly::ExactPoly(std::vector<GaussianRational> coeffs, std::string var)
    : coeffs_(std::move(coeffs)), var_(std::move(var)) {
  normalize();
}

ExactPoly ExactPoly::constant(const GaussianRational& c, std::string var) {
  return ExactPoly({c}, std::move(var));
}

ExactPoly ExactPoly::linear_factor(const GaussianRational& root, std::string var) {
  return ExactPoly({-root, 1}, std::move(var));
}

ExactPoly ExactPoly::with_var(std::string var) const {
  ExactPoly p = *this;
  p.var_ = std::move(var);
  return p;
}

void ExactPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussianRational ExactPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

GaussianRational ExactPoly::leading() const {
  return coeffs_.empty() ? GaussianRational{} : coeffs_.back();
}

GaussianRational ExactPoly::evaluate(const GaussianRational& x) const {
  GaussianRational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> ExactPoly::evaluate(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_complex();
  return acc;
}

ExactPoly ExactPoly::derivative(unsigned m) const {
  std::vector<GaussianRational> out;
  for (std::size_t k = m; k < coeffs_.size(); ++k) {
    // k (k-1) ... (k-m+1)
    mpz_class falling = 1;
    for (unsigned j = 0; j < m; ++j) falling *= static_cast<unsigned long>(k - j);
    out.push_back(coeffs_[k] * GaussianRational(mpq_class(falling)));
  }
  return ExactPoly(std::move(out), var_);
}

ExactPoly ExactPoly::monic() const {
  if (is_zero()) return *this;
  const GaussianRational inv = leading().inverse();
  return inv * *this;
}

ExactPoly ExactPoly::operator-() const {
  ExactPoly p = *this;
  for (auto& c : p.coeffs_) c = -c;
  return p;
}

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) {
  std::vector<GaussianRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
  return ExactPoly(std::move(out), a.var_);
}

ExactPoly operator-(const ExactPoly& a, const ExactPoly& b) { return a + (-b); }

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
  if (a.is_zero() || b.is_zero()) return ExactPoly({}, a.var_);
  std::vector<GaussianRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return ExactPoly(std::move(out), a.var_);
}

ExactPoly operator*(const GaussianRational& c, const ExactPoly& a) {
  std::vector<GaussianRational> out = a.coeffs_;
  for (auto& x : out) x *= c;
  return ExactPoly(std::move(out), a.var_);
}

std::string ExactPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const GaussianRational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string mono;
    if (k >= 1) mono = var_;
    if (k >= 2) mono += "^" + std::to_string(k);
    std::string term;
    if (mono.empty()) {
      term = c.to_string();
    } else if (c.is_one()) {
      term = mono;
    } else if ((-c).is_one()) {
      term = "-" + mono;
    } else {
      const bool juxtapose = c.is_real() && c.is_integer();
      term = c.to_string() + (juxtapose ? "" : "*") + mono;
    }
    if (!out.empty() && term.front() != '-') out += '+';
    out += term;
  }
  return out;
}

std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b) {
  if (b.is_zero()) throw NonUnit("polynomial division by zero");
  const GaussianRational lead_inv = b.leading().inverse();
  std::vector<GaussianRational> rem = a.coeffs();
  const int db = b.degree();
  std::vector<GaussianRational> quo(static_cast<std::size_t>(std::max(a.degree() - db + 1, 0)));
  for (int d = a.degree(); d >= db; --d) {
    const GaussianRational c = rem[static_cast<std::size_t>(d)] * lead_inv;
    if (c.is_zero()) continue;
    quo[static_cast<std::size_t>(d - db)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(d - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(std::max(std::min(a.degree() + 1, db), 0)));
  return {ExactPoly(std::move(quo), a.var()), ExactPoly(std::move(rem), a.var())};
}

ExactPoly gcd(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly r0 = a;
  ExactPoly r1 = b;
  while (!r1.is_zero()) {
    ExactPoly r2 = divmod(r0, r1).second;
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  return r0.monic();
}

unsigned root_multiplicity(const ExactPoly& p, const GaussianRational& root) {
  if (p.is_zero()) throw DomainError("multiplicity of a root of the zero polynomial is undefined");
  unsigned m = 0;
  ExactPoly q = p;
  while (!q.is_zero() && q.evaluate(root).is_zero()) {
    q = q.derivative();
    ++m;
  }
  return m;
}

ExactRational::ExactRational(ExactPoly num, ExactPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  const std::string var = den_.var();
  if (num_.is_zero()) {
    num_ = ExactPoly({}, var);
    den_ = ExactPoly::constant(1, var);
    return;
  }
  ExactPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  const GaussianRational lead_inv = den_.leading().inverse();
  num_ = (lead_inv * num_).with_var(var);
  den_ = (lead_inv * den_).with_var(var);
}

std::complex<double> ExactRational::evaluate(std::complex<double> x) const {
  return num_.evaluate(x) / den_.evaluate(x);
}

std::string ExactRational::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace perturb
