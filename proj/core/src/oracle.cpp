#include "perturb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace perturb::oracle {

namespace {

Complex horner(std::span<const Complex> c, Complex x) {
  Complex acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

Complex horner_derivative(std::span<const Complex> c, Complex x) {
  Complex acc = 0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * x + c[k] * static_cast<double>(k);
  return acc;
}

double max_abs(std::span<const Complex> c) {
  double m = 0;
  for (const auto& z : c) m = std::max(m, std::abs(z));
  return m;
}

std::vector<Complex> to_complex(const ExactPoly& p) {
  std::vector<Complex> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.to_complex());
  return out;
}

void sort_descending(std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("empty t0 grid");
  for (double t : grid) {
    if (!(t > 0 && t <= 0.1)) throw DomainError("t0 values must lie in (0, 0.1]");
  }
  std::sort(grid.begin(), grid.end(), std::greater<>());
}

// Error must not exceed the tolerance at the smallest t0 and must shrink
// (10% slack) along the grid. Errors below tolerance/100 are round-off, which
// grows as t0 shrinks inside a root cluster, and are exempt from the trend.
Verdict monotone_verdict(const std::vector<ConvergenceSample>& s, double tolerance) {
  const double floor = tolerance / 100;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].error > std::max(1.1 * s[i - 1].error, floor)) return Verdict::fail;
  }
  return s.back().error <= tolerance ? Verdict::pass : Verdict::fail;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<Complex> poly_roots_numeric(std::span<const Complex> coeffs,
                                        const RootFinderOptions& options) {
  if (coeffs.empty() || coeffs.back() == Complex{}) throw DomainError("leading coefficient must be nonzero");
  if (coeffs.size() > 31) throw DomainError("degree above 30 is not supported");
  const std::size_t hi = coeffs.size();
  std::size_t lo = 0;
  while (coeffs[lo] == Complex{}) ++lo;

  // Exact zero roots are split off so the circle of guesses is scaled to the rest.
  std::vector<Complex> roots(lo, Complex{});
  const std::span<const Complex> c = coeffs.subspan(lo, hi - lo);
  const std::size_t n = c.size() - 1;
  if (n == 0) return roots;

  const double radius = std::pow(std::abs(c.front() / c.back()), 1.0 / static_cast<double>(n));
  std::mt19937_64 rng(options.seed);
  const double phase = std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = std::polar(radius, phase + 2 * std::numbers::pi * static_cast<double>(k) / n + 0.4);
  }

  // |P(z)| below this multiple of the rounding error bound of Horner's rule
  // means z is as accurate as double precision allows (clustered roots
  // never reach the step tolerance).
  constexpr double kBackwardErrorFactor = 8 * std::numeric_limits<double>::epsilon();
  std::vector<double> abs_coeffs(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) abs_coeffs[k] = std::abs(c[k]);
  auto noise_floor = [&](Complex x) {
    double acc = 0;
    const double r = std::abs(x);
    for (std::size_t k = abs_coeffs.size(); k-- > 0;) acc = acc * r + abs_coeffs[k];
    return kBackwardErrorFactor * static_cast<double>(n) * acc;
  };

  bool converged = false;
  for (unsigned it = 0; it < options.max_iterations && !converged; ++it) {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex p = horner(c, z[i]);
      if (std::abs(p) <= noise_floor(z[i])) continue;
      const Complex dp = horner_derivative(c, z[i]);
      Complex step;
      if (dp == Complex{}) {
        step = Complex(1e-8 * (1 + std::abs(z[i])), 0);  // nudge off a critical point
      } else {
        const Complex newton = p / dp;
        Complex repulsion = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) repulsion += 1.0 / (z[i] - z[j]);
        }
        const Complex denom = 1.0 - newton * repulsion;
        step = denom == Complex{} ? newton : newton / denom;
      }
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1 + std::abs(z[i])));
    }
    converged = worst <= options.step_tolerance;
  }
  if (!converged) {
    throw ConvergenceError("Aberth iteration did not converge within " +
                               std::to_string(options.max_iterations) + " iterations",
                           z);
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<Complex> Sampling::values(const RingPtr& ring, double t0) const {
  const std::size_t m = ring->arity();
  if (multipliers.empty()) return std::vector<Complex>(m, Complex(t0, 0));
  if (multipliers.size() != m) throw DomainError("one sampling multiplier per generator is required");
  std::vector<Complex> out(m);
  for (std::size_t g = 0; g < m; ++g) out[g] = multipliers[g] * t0;
  return out;
}

std::vector<Complex> sample_coeffs(const PerturbedPolynomial& p, const Sampling& s, double t0) {
  const std::vector<Complex> vals = s.values(p.ring(), t0);
  std::vector<Complex> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(numeric_sample(c, vals));
  return out;
}

ConvergenceReport verify_root_asymptotics(const ExactPoly& p, const PerturbedPolynomial& xi,
                                          const RootAsymptotics& asym, std::vector<double> grid,
                                          const AsymptoticsCheck& check) {
  sort_descending(grid);
  const GaussianRational& u = asym.base_root;
  const unsigned mult = root_multiplicity(p, u);
  if (mult == 0) throw DomainError(u.to_string() + " is not a root of the unperturbed polynomial");
  const Complex uc = u.to_complex();

  // Distance from u to the nearest other root of P: clusters must stay well inside it.
  const ExactPoly squarefree = divmod(p, gcd(p, p.derivative())).first;
  double separation = std::numeric_limits<double>::infinity();
  if (squarefree.degree() > 1) {
    const auto sf = to_complex(squarefree);
    for (const Complex& r : poly_roots_numeric(sf, check.root_finder)) {
      const double d = std::abs(r - uc);
      if (d > 1e-6) separation = std::min(separation, d);
    }
  }

  ConvergenceReport report;
  report.tolerance = check.tolerance;
  const bool zero_rhs = asym.rhs.is_zero();
  for (double t0 : grid) {
    const std::vector<Complex> vals = check.sampling.values(xi.ring(), t0);
    std::vector<Complex> coeffs = to_complex(p);
    const std::vector<Complex> dx = sample_coeffs(xi, check.sampling, t0);
    if (dx.size() > coeffs.size()) coeffs.resize(dx.size());
    for (std::size_t k = 0; k < dx.size(); ++k) coeffs[k] += dx[k];

    std::vector<Complex> roots = poly_roots_numeric(coeffs, check.root_finder);
    std::sort(roots.begin(), roots.end(), [&](Complex a, Complex b) {
      return std::abs(a - uc) < std::abs(b - uc);
    });
    if (roots.size() < mult) {
      report.note = "perturbed polynomial lost roots near u at t0=" + std::to_string(t0);
      report.verdict = Verdict::inconclusive;
      return report;
    }
    const double spread = std::abs(roots[mult - 1] - uc);
    const double outside = roots.size() > mult ? std::abs(roots[mult] - uc) : separation;
    if (spread >= 0.5 * std::min(separation, outside)) {
      report.note = "root cluster at u is not separated from other roots at t0=" + std::to_string(t0);
      report.samples.push_back({t0, Complex{}, Complex{}, Complex{}, std::nan("")});
      report.verdict = Verdict::inconclusive;
      return report;
    }

    const Complex predicted = numeric_sample(asym.rhs, vals);
    const Complex lin = asym.linear ? numeric_sample(*asym.linear, vals) : Complex{};
    // Every cluster member obeys the statement when it describes all mult branches;
    // a lower-order branch only has to be matched by one of them.
    const bool all_branches = asym.order == mult || asym.linear.has_value();
    ConvergenceSample sample{t0, {}, predicted, {}, all_branches ? -1.0 : 1e300};
    for (std::size_t j = 0; j < mult; ++j) {
      const Complex x = roots[j] - uc;
      const Complex lhs = std::pow(x, static_cast<int>(asym.order)) + lin * x;
      double err;
      Complex ratio;
      if (zero_rhs) {
        // xi ~ 0 means xi = o(t0): measure the branch against the generator scale.
        err = std::abs(x) / t0;
        ratio = Complex(std::nan(""), 0);
      } else {
        ratio = lhs / predicted;
        err = std::abs(ratio - 1.0);
      }
      const bool take = all_branches ? err > sample.error : err < sample.error;
      if (take) {
        sample.observed = lhs;
        sample.ratio = ratio;
        sample.error = err;
      }
    }
    report.samples.push_back(sample);
  }
  report.verdict = monotone_verdict(report.samples, check.tolerance);
  return report;
}

namespace {

void trim(std::vector<Complex>& p, double threshold) {
  while (!p.empty() && std::abs(p.back()) <= threshold) p.pop_back();
}

std::vector<Complex> remainder(std::vector<Complex> a, const std::vector<Complex>& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    const Complex q = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] -= q * b[k];
    a.pop_back();
  }
  return a;
}

std::vector<Complex> monic(std::vector<Complex> p) {
  const Complex lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

}  // namespace

ConvergenceReport verify_pgcd(const PerturbedPolynomial& a, const PerturbedPolynomial& b, double t0,
                              const Sampling& sampling, const RootFinderOptions&) {
  if (!(t0 > 0)) throw DomainError("t0 must be positive");
  const double threshold = 10 * t0;
  ConvergenceReport report;
  report.tolerance = threshold;

  const PgcdResult symbolic = pgcd(a, b);
  std::vector<Complex> expected = sample_coeffs(symbolic.pgcd, sampling, t0);
  trim(expected, 0);

  std::vector<Complex> prev = sample_coeffs(a, sampling, t0);
  std::vector<Complex> cur = sample_coeffs(b, sampling, t0);
  trim(prev, threshold);
  trim(cur, threshold);
  if (prev.size() < cur.size()) std::swap(prev, cur);
  while (!cur.empty()) {
    std::vector<Complex> r = remainder(prev, cur);
    const double size = max_abs(r);
    if (size > threshold && size <= 10 * threshold) {
      report.verdict = Verdict::inconclusive;
      report.note = "remainder of size " + std::to_string(size) + " is within a decade of the threshold";
      return report;
    }
    trim(r, threshold);
    prev = std::move(cur);
    cur = std::move(r);
  }

  if (prev.empty() || expected.empty() || prev.size() != expected.size()) {
    report.verdict = Verdict::fail;
    report.note = "numeric PGCD has degree " + std::to_string(static_cast<int>(prev.size()) - 1) +
                  ", symbolic PGCD has degree " + std::to_string(static_cast<int>(expected.size()) - 1);
    return report;
  }
  const auto got = monic(prev);
  const auto want = monic(expected);
  double diff = 0;
  for (std::size_t k = 0; k < got.size(); ++k) diff = std::max(diff, std::abs(got[k] - want[k]));
  report.samples.push_back({t0, diff, threshold, diff / threshold, diff / threshold});
  report.verdict = diff <= threshold ? Verdict::pass : Verdict::fail;
  return report;
}

std::vector<Complex> numeric_char_poly(std::span<const Complex> entries, std::size_t n) {
  if (entries.size() != n * n || n == 0) throw DomainError("expected n*n matrix entries");
  auto at = [&](std::size_t i, std::size_t j) { return entries[i * n + j]; };
  std::vector<Complex> c(n + 1);
  c[n] = 1;
  std::vector<Complex> mk(n * n, Complex{});  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
    std::vector<Complex> next(n * n, Complex{});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Complex s = 0;
        for (std::size_t l = 0; l < n; ++l) s += at(i, l) * mk[l * n + j];
        next[i * n + j] = s;
      }
      next[i * n + i] += c[n - k + 1];
    }
    Complex trace = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) trace += at(i, l) * next[l * n + i];
    }
    c[n - k] = -trace / static_cast<double>(k);
    mk = std::move(next);
  }
  return c;
}

std::vector<Complex> verify_eigenvalues(const PerturbedMatrix& m, double t0, const Sampling& sampling,
                                        const RootFinderOptions& options) {
  const std::size_t n = m.order();
  const std::vector<Complex> vals = sampling.values(m.ring(), t0);
  std::vector<Complex> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      entries[i * n + j] = m.base()(i, j).to_complex() + numeric_sample(m.pert()(i, j), vals);
    }
  }
  return poly_roots_numeric(numeric_char_poly(entries, n), options);
}

ConvergenceReport verify_transfer(const RationalFunction& h, const SimplificationReport& report,
                                  Complex p0, std::vector<double> grid, const Sampling& sampling) {
  sort_descending(grid);
  ConvergenceReport out;
  out.tolerance = 2.0;
  const Complex base = report.reduced_shadow.evaluate(p0);
  for (double t0 : grid) {
    const std::vector<Complex> vals = sampling.values(h.num.ring(), t0);
    const Complex value = horner(sample_coeffs(h.num, sampling, t0), p0) /
                          horner(sample_coeffs(h.den, sampling, t0), p0);
    Complex predicted = 0;
    for (std::size_t g = 0; g < report.first_order.size(); ++g) {
      predicted += report.first_order[g].second.evaluate(p0) * vals[g];
    }
    const Complex observed = value - base;
    out.samples.push_back({t0, observed, predicted, observed / predicted, std::abs(observed - predicted)});
  }
  // Residual must shrink like t0^2 between consecutive grid points.
  out.verdict = Verdict::pass;
  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    const double ideal = std::pow(out.samples[i - 1].t0 / out.samples[i].t0, 2);
    const double actual = out.samples[i - 1].error / out.samples[i].error;
    if (!(actual >= ideal / out.tolerance && actual <= ideal * out.tolerance)) {
      out.verdict = Verdict::fail;
      out.note = "residual shrank by " + std::to_string(actual) + " instead of about " + std::to_string(ideal);
      break;
    }
  }
  if (out.samples.size() < 2) {
    out.verdict = Verdict::inconclusive;
    out.note = "at least two t0 values are needed to measure the residual order";
  }
  return out;
}

}  // namespace perturb::oracle
