#include "perturb/matperturb.hpp"

#include "perturb/error.hpp"

namespace perturb {

PerturbedMatrix::PerturbedMatrix(ConstantMatrix base, SeriesMatrix pert)
    : base_(std::move(base)), pert_(std::move(pert)) {
  if (base_.order() != pert_.order() || base_.order() == 0) {
    throw DomainError("base and perturbation must be square matrices of the same positive order");
  }
  for (const auto& x : pert_.entries()) {
    if (!same_ring(x.ring(), ring())) throw IncompatibleRing("perturbation entries belong to different rings");
    if (!x.is_infinitesimal()) {
      throw DomainError("perturbation entry " + x.to_string() + " is not infinitesimal");
    }
  }
}

SeriesMatrix PerturbedMatrix::full() const { return lift(base_, ring()) + pert_; }

ExactPoly char_poly(const ConstantMatrix& m) {
  const std::size_t n = m.order();
  std::vector<GaussianRational> coeffs(n + 1);
  coeffs[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    GaussianRational q = minor_sum(m, k);
    coeffs[n - k] = k % 2 == 0 ? q : -q;
  }
  return ExactPoly(std::move(coeffs));
}

PerturbedPolynomial char_poly(const SeriesMatrix& m) {
  const std::size_t n = m.order();
  const RingPtr& ring = m(0, 0).ring();
  std::vector<TruncatedSeries> coeffs(n + 1, TruncatedSeries(ring));
  coeffs[n] = TruncatedSeries(ring, 1);
  for (std::size_t k = 1; k <= n; ++k) {
    TruncatedSeries q = minor_sum(m, k);
    coeffs[n - k] = k % 2 == 0 ? q : -q;
  }
  return {ring, std::move(coeffs)};
}

PerturbedPolynomial char_poly(const PerturbedMatrix& m) { return char_poly(m.full()); }

TruncatedSeries charpoly_expansion(const ConstantMatrix& a, const SeriesMatrix& e, std::size_t k) {
  if (a.order() != e.order()) throw DomainError("matrix order mismatch");
  const RingPtr& ring = e(0, 0).ring();
  const SeriesMatrix lifted = lift(a, ring);
  TruncatedSeries out = minor_sum(lifted, k);
  for (std::size_t i = 1; i <= k; ++i) {
    std::vector<SeriesMatrix> args(k - i, lifted);
    args.insert(args.end(), i, e);
    const GaussianRational weight = (factorial(static_cast<unsigned>(i)) *
                                     factorial(static_cast<unsigned>(k - i))).inverse();
    out += polarize(k, args) * weight;
  }
  return out;
}

GozeDecomposition decompose_matrix(const SeriesMatrix& e) { return decompose(e.entries()); }

ConstantMatrix level_matrix(const GozeLevel& level, std::size_t n) {
  if (level.direction.size() != n * n) throw DomainError("Goze direction does not match the matrix order");
  ConstantMatrix u(n, GaussianRational{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) u(i, j) = level.direction[i * n + j];
  }
  return u;
}

PerturbedPolynomial xi_first_order(const ConstantMatrix& a, const TruncatedSeries& alpha1,
                                   const ConstantMatrix& u1) {
  const std::size_t n = a.order();
  if (u1.order() != n) throw DomainError("matrix order mismatch");
  std::vector<TruncatedSeries> coeffs(n + 1, TruncatedSeries(alpha1.ring()));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<ConstantMatrix> args(k - 1, a);
    args.push_back(u1);
    GaussianRational c = polarize(k, args) / factorial(static_cast<unsigned>(k - 1));
    if (k % 2 == 1) c = -c;
    coeffs[n - k] = alpha1 * c;
  }
  return {alpha1.ring(), std::move(coeffs)};
}

PerturbedPolynomial xi_first_order(const ConstantMatrix& a, const SeriesMatrix& e) {
  const GozeDecomposition d = decompose_matrix(e);
  if (d.levels.empty()) throw DomainError("first-order part of a zero perturbation is undefined");
  return xi_first_order(a, d.levels.front().alpha, level_matrix(d.levels.front(), a.order()));
}

RootAsymptotics eigenvalue_correction(const PerturbedMatrix& m, const GaussianRational& eigenvalue,
                                      unsigned multiplicity) {
  const ExactPoly ca = char_poly(m.base());
  const unsigned exact = root_multiplicity(ca, eigenvalue);
  if (exact == 0) throw DomainError(eigenvalue.to_string() + " is not an eigenvalue of the base matrix");
  const unsigned p = multiplicity == 0 ? exact : multiplicity;
  const PerturbedPolynomial xi = char_poly(m) - PerturbedPolynomial::from_exact(ca, m.ring());
  return root_correction(ca, xi, eigenvalue, p);
}

std::vector<TruncatedSeries> conservative_residuals(const SeriesMatrix& a, const SeriesMatrix& e) {
  if (a.order() != e.order()) throw DomainError("matrix order mismatch");
  const SeriesMatrix sum = a + e;
  std::vector<TruncatedSeries> out;
  for (std::size_t k = 1; k <= a.order(); ++k) out.push_back(minor_sum(sum, k) - minor_sum(a, k));
  return out;
}

std::vector<TruncatedSeries> conservative_residuals(const PerturbedMatrix& m) {
  return conservative_residuals(lift(m.base(), m.ring()), m.pert());
}

std::size_t orbit_dimension(const ConstantMatrix& a) {
  const std::size_t n = a.order();
  std::vector<std::vector<GaussianRational>> rows;
  rows.reserve(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      ConstantMatrix basis(n, GaussianRational{});
      basis(p, q) = 1;
      const ConstantMatrix bracket = matmul(basis, a) - matmul(a, basis);
      rows.push_back(bracket.entries());
    }
  }
  return exact_rank(std::move(rows));
}

bool is_hermitian(const ConstantMatrix& m) { return conjugate_transpose(m) == m; }

TruncatedSeries hermitian_first_order(const ConstantMatrix& a, const ConstantMatrix& u1,
                                      const TruncatedSeries& alpha1,
                                      const GaussianRational& lambda) {
  if (!is_hermitian(a)) throw DomainError("base matrix is not Hermitian");
  if (!is_hermitian(u1)) throw DomainError("perturbation direction is not Hermitian");
  if (!alpha1.is_infinitesimal()) throw DomainError("first Goze scale must be infinitesimal");
  const ExactPoly ca = char_poly(a);
  if (!ca.evaluate(lambda).is_zero()) {
    throw DomainError(lambda.to_string() + " is not an eigenvalue of the base matrix");
  }
  const GaussianRational slope = ca.derivative().evaluate(lambda);
  if (slope.is_zero()) throw DomainError(lambda.to_string() + " is not a simple eigenvalue");
  const TruncatedSeries xi1 = evaluate(xi_first_order(a, alpha1, u1), lambda);
  return xi1 * (-slope.inverse());
}

}  // namespace perturb
