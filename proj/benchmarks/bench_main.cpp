#include <benchmark/benchmark.h>

#include <vector>

#include "perturb/matperturb.hpp"
#include "perturb/oracle.hpp"
#include "perturb/parse.hpp"
#include "perturb/ppoly.hpp"

using namespace perturb;

namespace {

void series_multiply(benchmark::State& state) {
  const RingPtr r = SeriesRing::make({"e1", "e2", "e3"}, static_cast<int>(state.range(0)));
  const TruncatedSeries a = parse_series("(1 + e1 - 2/3*e2 + e3)^4", r);
  const TruncatedSeries b = parse_series("(1 - e1 + e2*e3)^3", r);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(series_multiply)->Arg(4)->Arg(8)->Arg(12);

void pgcd_example(benchmark::State& state) {
  const RingPtr r = SeriesRing::make({"e1", "e2", "e3"}, static_cast<int>(state.range(0)));
  const PerturbedPolynomial a = parse_polynomial("X^3 - e1*X + (-1+e2)", r);
  const PerturbedPolynomial b = parse_polynomial("X^2 + e3*X - 1", r);
  for (auto _ : state) benchmark::DoNotOptimize(pgcd(a, b));
}
BENCHMARK(pgcd_example)->Arg(4)->Arg(8);

void charpoly_expansion_full(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RingPtr r = SeriesRing::univariate();
  const TruncatedSeries t = TruncatedSeries::generator(r, "t");
  ConstantMatrix a(n, GaussianRational{});
  SeriesMatrix e(n, TruncatedSeries(r));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = static_cast<long>((3 * i + 5 * j) % 7) - 3;
      e(i, j) = t * GaussianRational(static_cast<long>((i + 2 * j) % 5) - 2);
    }
  }
  for (auto _ : state) {
    for (std::size_t k = 1; k <= n; ++k) benchmark::DoNotOptimize(charpoly_expansion(a, e, k));
  }
}
BENCHMARK(charpoly_expansion_full)->DenseRange(2, 5);

void aberth_roots(benchmark::State& state) {
  const auto degree = static_cast<std::size_t>(state.range(0));
  std::vector<oracle::Complex> c(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) c[k] = static_cast<double>((7 * k) % 11) - 5.0;
  c[degree] = 1;
  for (auto _ : state) benchmark::DoNotOptimize(oracle::poly_roots_numeric(c));
}
BENCHMARK(aberth_roots)->Arg(4)->Arg(8)->Arg(16)->Arg(30);

}  // namespace
BENCHMARK_MAIN();
