#include <doctest.h>

#include <algorithm>

#include "perturb/error.hpp"
#include "perturb/matperturb.hpp"
#include "perturb/oracle.hpp"
#include "perturb/parse.hpp"
#include "support.hpp"

using namespace perturb;

namespace {

const RingPtr kT = SeriesRing::univariate();

TruncatedSeries St(const char* text) { return parse_series(text, kT); }
PerturbedPolynomial Pt(const char* text) { return parse_polynomial(text, kT); }

ConstantMatrix M(std::vector<std::vector<long>> rows) {
  ConstantMatrix m(rows.size(), GaussianRational{});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ConstantMatrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  ConstantMatrix m(n, GaussianRational{});
  m(i, j) = 1;
  return m;
}

SeriesMatrix times(const ConstantMatrix& m, const TruncatedSeries& s) {
  return m.map([&](const GaussianRational& x) { return s * x; });
}

ConstantMatrix jordan3() { return M({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}); }

void require_oracle_pass(const PerturbedMatrix& m, const RootAsymptotics& a) {
  const ExactPoly ca = char_poly(m.base());
  const PerturbedPolynomial xi = char_poly(m) - PerturbedPolynomial::from_exact(ca, m.ring());
  const auto report = oracle::verify_root_asymptotics(ca, xi, a, {1e-2, 1e-3, 1e-4});
  INFO(a.statement(), " ", report.note);
  CHECK(report.verdict == oracle::Verdict::pass);
}

SeriesMatrix random_pert(testing::Random& rnd, std::size_t n, const RingPtr& ring) {
  SeriesMatrix e(n, TruncatedSeries(ring));
  const TruncatedSeries t = TruncatedSeries::generator(ring, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) e(i, j) = t * GaussianRational(rnd.integer(-3, 3));
  }
  return e;
}

}  // namespace

TEST_CASE("minor sum examples") {
  const ConstantMatrix d = M({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  CHECK(minor_sum(d, 1) == GaussianRational(6));
  CHECK(minor_sum(d, 2) == GaussianRational(11));
  CHECK(minor_sum(d, 3) == GaussianRational(6));
  const std::size_t binom4[] = {1, 4, 6, 4, 1};
  for (std::size_t k = 1; k <= 4; ++k) CHECK(minor_sum(identity(4), k) == GaussianRational(long(binom4[k])));
  const ConstantMatrix a = M({{2, 7}, {-1, 5}});
  CHECK(minor_sum(a, 1) == GaussianRational(7));
  CHECK(minor_sum(a, 2) == GaussianRational(17));
  CHECK_THROWS_AS(minor_sum(a, 3), DomainError);
  CHECK_THROWS_AS(minor_sum(a, 0), DomainError);
}

TEST_CASE("minor sums of diagonal matrices are elementary symmetric functions") {
  testing::Random rnd(61);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(1, 6));
    ConstantMatrix d(n, GaussianRational{});
    std::vector<GaussianRational> diag;
    for (std::size_t k = 0; k < n; ++k) {
      diag.push_back(rnd.rational());
      d(k, k) = diag.back();
    }
    const ExactPoly c = char_poly(d);
    for (std::size_t k = 1; k <= n; ++k) {
      const GaussianRational e = testing::elementary_symmetric(diag, k);
      CHECK(minor_sum(d, k) == e);
      CHECK(c.coeff(static_cast<int>(n - k)) == (k % 2 ? -e : e));
    }
  }
}

TEST_CASE("polarization examples") {
  const ConstantMatrix e11 = unit_matrix(2, 0, 0), e22 = unit_matrix(2, 1, 1);
  CHECK(polarize<GaussianRational>(2, {e11, e22}) == GaussianRational(1));
  testing::Random rnd(62);
  for (int i = 0; i < 20; ++i) {
    const ConstantMatrix a = rnd.int_matrix(2, -5, 5);
    CHECK(polarize<GaussianRational>(2, {a, a}) == GaussianRational(2) * testing::leibniz_det(a));
  }
  // Nilpotent Jordan block with U = E31: det(A + sU) = s, so Theta = 2! * 1.
  CHECK(polarize<GaussianRational>(3, {jordan3(), jordan3(), unit_matrix(3, 2, 0)}) == GaussianRational(2));
  CHECK_THROWS_AS(polarize<GaussianRational>(2, {e11}), DomainError);
  CHECK_THROWS_AS(polarize<GaussianRational>(2, {e11, identity(3)}), DomainError);
}

TEST_CASE("polarization is symmetric, multilinear and normalized") {
  testing::Random rnd(63);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(2, 4));
    const std::size_t k = static_cast<std::size_t>(rnd.integer(1, static_cast<int>(n)));
    std::vector<ConstantMatrix> args;
    for (std::size_t j = 0; j < k; ++j) args.push_back(rnd.int_matrix(n, -3, 3));
    const GaussianRational base = polarize(k, args);
    std::vector<ConstantMatrix> shuffled = args;
    std::shuffle(shuffled.begin(), shuffled.end(), rnd.engine());
    CHECK(polarize(k, shuffled) == base);
    const ConstantMatrix b = rnd.int_matrix(n, -3, 3);
    std::vector<ConstantMatrix> with_b = args, with_sum = args;
    with_b[0] = b;
    with_sum[0] = args[0] + GaussianRational(3) * b;
    CHECK(polarize(k, with_sum) == base + GaussianRational(3) * polarize(k, with_b));
    const std::vector<ConstantMatrix> same(k, args[0]);
    CHECK(polarize(k, same) == factorial(static_cast<unsigned>(k)) * minor_sum(args[0], k));
  }
}

TEST_CASE("characteristic polynomial examples") {
  CHECK(char_poly(M({{1, 1}, {0, 1}})) == shadow_poly(Pt("X^2-2X+1")));
  SeriesMatrix e(2, TruncatedSeries(kT));
  e(1, 0) = St("t");
  CHECK(char_poly(PerturbedMatrix(M({{1, 1}, {0, 1}}), e)) == Pt("X^2-2X+1-t"));
  CHECK(char_poly(M({{1, 0}, {0, 2}})) == shadow_poly(Pt("X^2-3X+2")));
}

TEST_CASE("perturbed matrices require infinitesimal perturbations") {
  SeriesMatrix e(2, TruncatedSeries(kT));
  e(0, 0) = St("1+t");
  CHECK_THROWS_AS(PerturbedMatrix(identity(2), e), DomainError);
  CHECK_THROWS_AS(PerturbedMatrix(identity(3), SeriesMatrix(2, TruncatedSeries(kT))), DomainError);
}

TEST_CASE("expansion examples") {
  testing::Random rnd(64);
  const ConstantMatrix a = rnd.int_matrix(3, -3, 3);
  const SeriesMatrix e = random_pert(rnd, 3, kT);
  const SeriesMatrix lifted = lift(a, kT);
  const TruncatedSeries theta = polarize<TruncatedSeries>(2, {lifted, e});
  CHECK(charpoly_expansion(a, e, 2) == TruncatedSeries(kT, minor_sum(a, 2)) + theta + minor_sum(e, 2));
  const SeriesMatrix zero(3, TruncatedSeries(kT));
  for (std::size_t k = 1; k <= 3; ++k) CHECK(charpoly_expansion(a, zero, k) == TruncatedSeries(kT, minor_sum(a, k)));
}

TEST_CASE("expansion equals direct minor sums on random instances") {
  testing::Random rnd(65);
  const RingPtr r = SeriesRing::make({"t", "e1"}, 4);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(2, 4));
    const ConstantMatrix a = rnd.int_matrix(n, -3, 3);
    SeriesMatrix e(n, TruncatedSeries(r));
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) e(p, q) = rnd.series(r, 1, 0.2);
    }
    const SeriesMatrix sum = lift(a, r) + e;
    for (std::size_t k = 1; k <= n; ++k) CHECK(charpoly_expansion(a, e, k) == testing::reference_minor_sum(sum, k));
  }
}

TEST_CASE("first-order part of the characteristic polynomial") {
  CHECK(xi_first_order(jordan3(), times(unit_matrix(3, 2, 0), St("t"))) == Pt("-t"));
  CHECK(xi_first_order(M({{1, 1}, {0, 1}}), times(unit_matrix(2, 1, 0), St("t"))) == Pt("-t"));
  CHECK(xi_first_order(ConstantMatrix(2, GaussianRational{}), times(identity(2), St("t"))) == Pt("-2t*X"));
  CHECK_THROWS_AS(xi_first_order(identity(2), SeriesMatrix(2, TruncatedSeries(kT))), DomainError);
}

TEST_CASE("first-order part matches the exact difference to first order") {
  testing::Random rnd(66);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(2, 4));
    const ConstantMatrix a = rnd.int_matrix(n, -3, 3);
    SeriesMatrix e = random_pert(rnd, n, kT);
    bool nonzero = false;
    for (const auto& x : e.entries()) nonzero = nonzero || !x.is_zero();
    if (!nonzero) continue;
    const PerturbedPolynomial diff = char_poly(PerturbedMatrix(a, e)) -
                                     PerturbedPolynomial::from_exact(char_poly(a), kT);
    const PerturbedPolynomial rest = diff - xi_first_order(a, e);
    for (const auto& c : rest.coeffs()) CHECK((c.is_zero() || *c.valuation() >= 2));
  }
}

TEST_CASE("eigenvalue correction examples") {
  SeriesMatrix e(2, TruncatedSeries(kT));
  e(1, 0) = St("t");
  const PerturbedMatrix j2(M({{1, 1}, {0, 1}}), e);
  const RootAsymptotics a = eigenvalue_correction(j2, 1);
  CHECK(a.order == 2);
  CHECK(a.rhs == St("t"));
  require_oracle_pass(j2, a);

  const PerturbedMatrix n3(jordan3(), times(unit_matrix(3, 2, 0), St("t")));
  const RootAsymptotics b = eigenvalue_correction(n3, 0, 3);
  CHECK(b.order == 3);
  CHECK(b.rhs == St("t"));
  require_oracle_pass(n3, b);

  const PerturbedMatrix d(M({{1, 0}, {0, 2}}), times(unit_matrix(2, 0, 0), St("t")));
  const RootAsymptotics c = eigenvalue_correction(d, 1, 1);
  CHECK(c.order == 1);
  CHECK(c.rhs == St("t"));
  require_oracle_pass(d, c);

  CHECK_THROWS_AS(eigenvalue_correction(d, 5), DomainError);
}

TEST_CASE("random eigenvalue corrections pass the oracle") {
  testing::Random rnd(67);
  int checked = 0;
  for (int i = 0; i < 40 && checked < 15; ++i) {
    // Triangular base so eigenvalues are known rationals.
    const std::size_t n = static_cast<std::size_t>(rnd.integer(2, 3));
    ConstantMatrix a = rnd.int_matrix(n, -2, 2);
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < p; ++q) a(p, q) = 0;
    }
    const PerturbedMatrix m(a, random_pert(rnd, n, kT));
    try {
      const RootAsymptotics r = eigenvalue_correction(m, a(0, 0));
      require_oracle_pass(m, r);
      ++checked;
    } catch (const Degenerate&) {
    }
  }
  CHECK(checked >= 5);
}

TEST_CASE("conservative residual examples") {
  const ConstantMatrix zero(2, GaussianRational{});
  for (const auto& r : conservative_residuals(PerturbedMatrix(M({{1, 2}, {3, 4}}), SeriesMatrix(2, TruncatedSeries(kT)))))
    CHECK(r.is_zero());
  for (const auto& r : conservative_residuals(PerturbedMatrix(zero, times(unit_matrix(2, 0, 1), St("t")))))
    CHECK(r.is_zero());

  const RingPtr r = SeriesRing::make({"a1", "a2", "a3", "a4", "e1", "e2", "e3"}, 4);
  auto g = [&](const char* n) { return TruncatedSeries::generator(r, n); };
  SeriesMatrix a(2, TruncatedSeries(r)), e(2, TruncatedSeries(r));
  a(0, 0) = g("a1");
  a(0, 1) = g("a2");
  a(1, 0) = g("a3");
  a(1, 1) = g("a4");
  e(0, 0) = g("e1");
  e(0, 1) = g("e2");
  e(1, 0) = g("e3");
  e(1, 1) = -g("e1");
  const auto res = conservative_residuals(a, e);
  CHECK(res[0].is_zero());
  // The displayed quadratic form (a1-a4)e1 + a2e3 + a3e2 + e1^2 + e2e3, with the
  // overall sign fixed by det(A+E) - det(A).
  CHECK(res[1] == -((g("a1") - g("a4")) * g("e1") + g("a2") * g("e3") + g("a3") * g("e2") +
                    g("e1") * g("e1") + g("e2") * g("e3")));
}

TEST_CASE("conservative perturbations leave the spectrum fixed") {
  testing::Random rnd(68);
  for (int i = 0; i < 20; ++i) {
    // Random singular trace-free perturbation of A = 0: t * (x y; z -x) with x^2 + yz = 0.
    const long x = rnd.integer(-3, 3), y = rnd.integer(1, 3);
    const long z = -(x * x) / y;
    if (x * x + y * z != 0) continue;
    SeriesMatrix e(2, TruncatedSeries(kT));
    e(0, 0) = St("t") * GaussianRational(x);
    e(0, 1) = St("t") * GaussianRational(y);
    e(1, 0) = St("t") * GaussianRational(z);
    e(1, 1) = St("t") * GaussianRational(-x);
    const PerturbedMatrix m(ConstantMatrix(2, GaussianRational{}), e);
    for (const auto& r : conservative_residuals(m)) CHECK(r.is_zero());
    for (const auto& ev : oracle::verify_eigenvalues(m, 1e-3)) CHECK(std::abs(ev) <= 10 * 1e-6);
  }
}

TEST_CASE("orbit dimension examples") {
  CHECK(orbit_dimension(GaussianRational(7) * identity(2)) == 0);
  CHECK(orbit_dimension(M({{1, 0}, {0, 2}})) == 2);
  CHECK(orbit_dimension(M({{1, 1}, {0, 1}})) == 2);
  CHECK(orbit_dimension(jordan3()) == 6);
}

TEST_CASE("orbit dimension is invariant under conjugation") {
  testing::Random rnd(69);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(2, 3));
    const ConstantMatrix a = rnd.int_matrix(n, -2, 2);
    // Unipotent upper-triangular P has an exact inverse.
    ConstantMatrix p = identity(n), lower = identity(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) p(r, c) = rnd.integer(-3, 3);
      for (std::size_t c = 0; c < r; ++c) lower(r, c) = rnd.integer(-3, 3);
    }
    const ConstantMatrix q = matmul(p, lower);
    // Invert q by solving with the adjugate: q^-1 = adj(q) / det(q).
    const GaussianRational det = determinant(q);
    ConstantMatrix inv(n, GaussianRational{});
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::size_t> rows, cols;
        for (std::size_t z = 0; z < n; ++z) {
          if (z != c) rows.push_back(z);
          if (z != r) cols.push_back(z);
        }
        ConstantMatrix minor(n - 1, GaussianRational{});
        for (std::size_t x = 0; x + 1 < n; ++x) {
          for (std::size_t y = 0; y + 1 < n; ++y) minor(x, y) = q(rows[x], cols[y]);
        }
        const GaussianRational cof = testing::leibniz_det(minor);
        inv(r, c) = ((r + c) % 2 ? -cof : cof) / det;
      }
    }
    REQUIRE(matmul(q, inv) == identity(n));
    CHECK(orbit_dimension(matmul(matmul(inv, a), q)) == orbit_dimension(a));
  }
}

TEST_CASE("hermitian first order examples") {
  const ConstantMatrix a = M({{0, 0}, {0, 1}}), u = M({{1, 0}, {0, 0}});
  CHECK(hermitian_first_order(a, u, St("t"), 0) == St("t"));
  CHECK(hermitian_first_order(a, u, St("t"), 1).is_zero());
  CHECK(hermitian_first_order(a, ConstantMatrix(2, GaussianRational{}), St("t"), 0).is_zero());
  CHECK_THROWS_AS(hermitian_first_order(M({{0, 1}, {0, 1}}), u, St("t"), 0), DomainError);
  CHECK_THROWS_AS(hermitian_first_order(identity(2), u, St("t"), 1), DomainError);
  CHECK_THROWS_AS(hermitian_first_order(a, u, St("t"), 3), DomainError);
}

TEST_CASE("hermitian shift is real and matches numeric eigenvalues") {
  const GaussianRational i = GaussianRational::imaginary_unit();
  ConstantMatrix a(2, GaussianRational{}), u(2, GaussianRational{});
  a(0, 0) = 2;
  a(1, 1) = -1;
  u(0, 0) = 1;
  u(0, 1) = i;
  u(1, 0) = -i;
  const TruncatedSeries rho = hermitian_first_order(a, u, St("t"), 2);
  CHECK(rho.standard_part().is_zero());
  CHECK(rho.coefficient({1}).is_real());
  const PerturbedMatrix m(a, times(u, St("t")));
  const double t0 = 1e-4;
  const auto eig = oracle::verify_eigenvalues(m, t0);
  double best = 1;
  for (const auto& ev : eig) best = std::min(best, std::abs(ev - (2.0 + numeric_sample(rho, t0))));
  CHECK(best < 1e-6);
}
