#include <doctest.h>

#include <string>

#include "perturb/error.hpp"
#include "perturb/parse.hpp"
#include "support.hpp"

using namespace perturb;

namespace {

const RingPtr kT = SeriesRing::univariate();
const RingPtr kE = SeriesRing::make({"e1", "e2", "e3"});
const RingPtr kTE = SeriesRing::make({"t", "e1", "e2"}, 6);

std::size_t error_column(std::string_view text, const RingPtr& ring = kE) {
  try {
    parse_polynomial(text, ring);
  } catch (const ParseError& e) {
    return e.column();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse examples") {
  const PerturbedPolynomial p = parse_polynomial("X^3 - 1 + e2 - e1*X", kE);
  CHECK(p.degree() == 3);
  CHECK(p.coeff(1) == -TruncatedSeries::generator(kE, "e1"));
  CHECK(p.coeff(0) == TruncatedSeries::generator(kE, "e2") - TruncatedSeries(kE, 1));

  const TruncatedSeries s = parse_series("1/2 + 3/4*t^2", kT);
  CHECK(s.coefficient({0}) == GaussianRational::fraction(1, 2));
  CHECK(s.coefficient({2}) == GaussianRational::fraction(3, 4));
  CHECK(s.coefficient({1}).is_zero());

  CHECK(error_column("X^ + 1") == 3);
  CHECK_THROWS_AS(parse_polynomial("X^ + 1", kE), ParseError);
}

TEST_CASE("implicit multiplication and precedence") {
  CHECK(parse_series("2t^2", kT) == parse_series("2*(t^2)", kT));
  CHECK(parse_series("-t^2", kT) == parse_series("-(t^2)", kT));
  CHECK(parse_series("3i t", kT) == parse_series("3*i*t", kT));
  CHECK(parse_polynomial("(X-1)(X+1)", kT) == parse_polynomial("X^2-1", kT));
  CHECK(parse_polynomial("2(X+1)", kT) == parse_polynomial("2X+2", kT));
  CHECK(parse_series("1-2/3*t", kT).coefficient({1}) == GaussianRational::fraction(-2, 3));
  CHECK(parse_series("i^2", kT) == parse_series("-1", kT));
  CHECK(parse_series("+ - 5", kT) == parse_series("-5", kT));
}

TEST_CASE("generators above the truncation vanish silently") {
  CHECK(parse_series("t^9", kT).is_zero());
  CHECK(parse_series("t^100000", kT).is_zero());
  CHECK(parse_series("(1+t)^3", SeriesRing::univariate(2)) == parse_series("1+3t+3t^2", SeriesRing::univariate(2)));
}

TEST_CASE("syntax errors carry a position") {
  CHECK(error_column("X + * 2") == 4);
  CHECK(error_column("(X + 1") == 7);
  CHECK(error_column("X $ 1") == 3);
  CHECK(error_column("X^-1") == 3);
  CHECK(error_column("") == 1);
  try {
    parse_polynomial("X +\n  * 1", kE);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("'*'") != std::string::npos);
  }
  try {
    parse_polynomial("X +\n  1 )", kE);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 4);
  }
}

TEST_CASE("symbol errors") {
  CHECK_THROWS_AS(parse_series("y", kT), ParseError);
  CHECK_THROWS_AS(parse_series("e1", kT), ParseError);
  CHECK_THROWS_AS(parse_series("X", kT), ParseError);
  CHECK_THROWS_AS(parse_polynomial("X + p", kT), ParseError);
  CHECK_THROWS_AS(parse_series("1/0", kT), ParseError);
  CHECK_THROWS_AS(parse_polynomial("X^1234567", kT), ParseError);
  CHECK_THROWS_AS(parse_polynomial("X^5000", kT), ParseError);
  CHECK(parse_series("2^20", kT) == parse_series("1048576", kT));
}

TEST_CASE("oversized input is rejected") {
  const std::string big(kMaxParseInput + 1, '1');
  CHECK_THROWS_AS(parse_series(big, kT), ParseError);
}

TEST_CASE("rational functions") {
  const RationalFunction h = parse_rational_function("(p+1)/(p^2+e1*p+1)", kE);
  CHECK(h.num.var() == "p");
  CHECK(h.den.degree() == 2);
  CHECK(parse_rational_function("p+1", kE).den == parse_polynomial("1", kE).with_var("p"));
  CHECK_THROWS_AS(parse_rational_function("p/0", kE), DomainError);
  CHECK_THROWS_AS(parse_rational_function("p/(p+1)/2", kE), ParseError);
}

TEST_CASE("source spans cover the consumed text") {
  SourceSpan span;
  parse_series("  1 + t  ", kT, &span);
  CHECK(span.begin == 2);
  CHECK(span.end == 7);
}

TEST_CASE("generator collection") {
  CHECK(collect_generators({"X^2 + e3*X", "e1 - t"}) == std::vector<std::string>{"t", "e1", "e3"});
  CHECK(collect_generators({"X + 1"}).empty());
  const RingPtr r = ring_for({"e2*p"}, 5);
  CHECK(r->arity() == 1);
  CHECK(r->truncation() == 5);
}

TEST_CASE("print then parse is the identity") {
  const char* corpus[] = {"0",
                          "1",
                          "-7/3",
                          "i",
                          "(2-3i)*t",
                          "t+2t^2-t^5",
                          "1/2 + 3/4*t^2",
                          "(1+i)*e1*e2 - e1^3 + t^2*e2",
                          "t^6",
                          "(1-t)^4"};
  for (const char* text : corpus) {
    const TruncatedSeries s = parse_series(text, kTE);
    INFO(text, " -> ", s.to_string());
    CHECK(parse_series(s.to_string(), kTE) == s);
  }
  const char* polys[] = {"X^3 - 1 + e2 - e1*X", "(1-e1+e1^2)*X - 1 + e2", "i*X^2 + (t-1/2)*X", "X", "-X^4 + 2",
                         "(X-t)^3"};
  for (const char* text : polys) {
    const PerturbedPolynomial p = parse_polynomial(text, kTE);
    INFO(text, " -> ", p.to_string());
    CHECK(parse_polynomial(p.to_string(), kTE) == p);
  }
  testing::Random rnd(81);
  for (int i = 0; i < 100; ++i) {
    const TruncatedSeries s = rnd.series(kTE, 0, 0.15) + TruncatedSeries(kTE, rnd.gaussian());
    CHECK(parse_series(s.to_string(), kTE) == s);
  }
}
