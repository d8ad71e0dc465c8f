#include "perturb/transfer.hpp"

#include "perturb/error.hpp"
#include "perturb/goze.hpp"

namespace perturb {

namespace {

void validate(const RationalFunction& h) {
  if (h.num.is_zero() || h.den.is_zero()) throw DomainError("transfer function needs nonzero numerator and denominator");
  if (!same_ring(h.num.ring(), h.den.ring())) throw IncompatibleRing("numerator and denominator belong to different rings");
  if (is_infinitesimal_poly(h.den)) throw DomainError("denominator is wholly infinitesimal");
}

/// Coefficient of the monomial `e` in every coefficient of p.
ExactPoly slice(const PerturbedPolynomial& p, const Exponent& e, const std::string& var) {
  std::vector<GaussianRational> out;
  for (const auto& c : p.coeffs()) out.push_back(c.coefficient(e));
  return ExactPoly(std::move(out), var);
}

ExactRational add(const ExactRational& a, const ExactRational& b) {
  return {a.num() * b.den() + b.num() * a.den(), a.den() * b.den()};
}

}  // namespace

FirstOrderMap first_order_correction(const RationalFunction& h) {
  validate(h);
  const std::string& var = h.num.var();
  const RingPtr& ring = h.num.ring();
  const ExactPoly n0 = shadow_poly(h.num).with_var(var);
  const ExactPoly d0 = shadow_poly(h.den).with_var(var);
  FirstOrderMap out;
  for (std::size_t g = 0; g < ring->arity(); ++g) {
    Exponent e(ring->arity(), 0);
    e[g] = 1;
    const ExactPoly ng = slice(h.num, e, var);
    const ExactPoly dg = slice(h.den, e, var);
    out.emplace_back(ring->generators()[g], ExactRational(ng * d0 - n0 * dg, d0 * d0));
  }
  return out;
}

SimplificationReport simplify(const RationalFunction& h) {
  validate(h);
  const std::string& var = h.num.var();
  PgcdResult g = pgcd(h.num, h.den.with_var(var));
  Division num_div = euclid_divide(h.num, g.pgcd);
  Division den_div = euclid_divide(h.den.with_var(var), g.pgcd);
  if (!is_infinitesimal_poly(num_div.remainder) || !is_infinitesimal_poly(den_div.remainder)) {
    throw Error("internal error: division by the PGCD left an appreciable remainder");
  }
  const ExactPoly y1 = shadow_poly(num_div.quotient).with_var(var);
  const ExactPoly x1 = shadow_poly(den_div.quotient).with_var(var);
  if (x1.is_zero()) throw DomainError("reduced denominator has a vanishing shadow");

  return SimplificationReport{ExactRational(y1, x1),
                              std::move(g.pgcd),
                              std::move(g.trace),
                              std::move(num_div.quotient),
                              std::move(num_div.remainder),
                              std::move(den_div.quotient),
                              std::move(den_div.remainder),
                              first_order_correction(h)};
}

ProjectedCorrection goze_projected_correction(
    const RationalFunction& h, const std::map<std::string, TruncatedSeries>& specialization) {
  const FirstOrderMap corrections = first_order_correction(h);
  const RingPtr& ring = h.num.ring();
  std::vector<TruncatedSeries> images;
  for (const auto& name : ring->generators()) {
    auto it = specialization.find(name);
    if (it == specialization.end()) throw DomainError("generator '" + name + "' is not mapped");
    images.push_back(it->second);
  }
  const GozeDecomposition d = decompose(images);
  if (d.levels.empty()) throw DomainError("specialized generator vector is zero");
  const auto& level = d.levels.front();
  ExactRational sum(ExactPoly({}, h.num.var()), ExactPoly::constant(1, h.num.var()));
  for (std::size_t g = 0; g < corrections.size(); ++g) {
    const ExactRational& c = corrections[g].second;
    sum = add(sum, ExactRational(level.direction[g] * c.num(), c.den()));
  }
  return {level.alpha, level.direction, sum};
}

}  // namespace perturb
