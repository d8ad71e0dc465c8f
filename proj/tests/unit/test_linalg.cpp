#include <doctest.h>

#include "perturb/linalg.hpp"
#include "perturb/parse.hpp"
#include "support.hpp"

using namespace perturb;

TEST_CASE("determinant agrees with the Leibniz formula") {
  testing::Random rnd(31);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(1, 5));
    const ConstantMatrix m = rnd.int_matrix(n, -4, 4);
    CHECK(determinant(m) == testing::leibniz_det(m));
  }
}

TEST_CASE("series determinant agrees with the Leibniz formula") {
  testing::Random rnd(32);
  const RingPtr r = SeriesRing::make({"t", "e1"}, 4);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = static_cast<std::size_t>(rnd.integer(1, 4));
    SeriesMatrix m(n, TruncatedSeries(r));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) m(a, b) = rnd.series(r, 0, 0.2);
    }
    CHECK(determinant(m) == testing::leibniz_det(m));
  }
}

TEST_CASE("exact rank") {
  using Row = std::vector<GaussianRational>;
  CHECK(exact_rank({Row{1, 2}, Row{2, 4}}) == 1);
  CHECK(exact_rank({Row{1, 0}, Row{0, 1}}) == 2);
  CHECK(exact_rank({Row{0, 0}}) == 0);
  CHECK(exact_rank({}) == 0);
  const GaussianRational i = GaussianRational::imaginary_unit();
  CHECK(exact_rank({Row{1, i}, Row{i, -1}}) == 1);
}

TEST_CASE("conjugate transpose and products") {
  ConstantMatrix m(2, GaussianRational{});
  m(0, 1) = GaussianRational::imaginary_unit();
  const ConstantMatrix h = conjugate_transpose(m);
  CHECK(h(1, 0) == -GaussianRational::imaginary_unit());
  CHECK(matmul(identity(2), m) == m);
  const RingPtr r = SeriesRing::univariate();
  CHECK(shadow(lift(m, r)) == m);
}
