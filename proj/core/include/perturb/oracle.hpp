#pragma once

// Floating-point brute force: substitute small numbers for the infinitesimal
// generators, solve numerically, and compare with the symbolic asymptotics.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perturb/error.hpp"
#include "perturb/exact_poly.hpp"
#include "perturb/matperturb.hpp"
#include "perturb/ppoly.hpp"
#include "perturb/transfer.hpp"

namespace perturb::oracle {

using Complex = std::complex<double>;

struct RootFinderOptions {
  unsigned max_iterations = 200;
  /// Converged when every step is below step_tolerance * (1 + |root|).
  double step_tolerance = 1e-14;
  /// Seeds the phase of the initial circle of guesses.
  std::uint64_t seed = 0;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<Complex> best)
      : Error(what), best_(std::move(best)) {}
  const std::vector<Complex>& best_iterate() const noexcept { return best_; }

 private:
  std::vector<Complex> best_;
};

/// All roots of sum_k coeffs[k] X^k by Aberth-Ehrlich simultaneous iteration.
std::vector<Complex> poly_roots_numeric(std::span<const Complex> coeffs,
                                        const RootFinderOptions& options = {});

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Verdict v);

struct ConvergenceSample {
  double t0 = 0;
  Complex observed;
  Complex predicted;
  Complex ratio;
  /// Figure of merit compared against the tolerance (meaning depends on the check).
  double error = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceSample> samples;  // decreasing t0
  Verdict verdict = Verdict::inconclusive;
  double tolerance = 0;
  std::string note;
};

/// How generator values follow t0: generator g is sampled at multipliers[g] * t0.
/// Empty means every generator equals t0.
struct Sampling {
  std::vector<Complex> multipliers;
  std::vector<Complex> values(const RingPtr& ring, double t0) const;
};

std::vector<Complex> sample_coeffs(const PerturbedPolynomial& p, const Sampling& s, double t0);

struct AsymptoticsCheck {
  double tolerance = 0.2;
  Sampling sampling;
  RootFinderOptions root_finder;
};

/// Solves P + Xi(t0) numerically for every t0 in the grid, pairs the roots
/// clustered at u with the prediction and checks |observed/predicted - 1|.
ConvergenceReport verify_root_asymptotics(const ExactPoly& p, const PerturbedPolynomial& xi,
                                          const RootAsymptotics& asym, std::vector<double> grid,
                                          const AsymptoticsCheck& check = {});

/// Numeric Euclidean algorithm at t0 (numerically-zero threshold 10 t0),
/// compared with the sampled symbolic PGCD after monic normalization.
ConvergenceReport verify_pgcd(const PerturbedPolynomial& a, const PerturbedPolynomial& b, double t0,
                              const Sampling& sampling = {}, const RootFinderOptions& = {});

/// Eigenvalues of the numerically sampled A + E(t0) (Faddeev-LeVerrier + Aberth).
std::vector<Complex> verify_eigenvalues(const PerturbedMatrix& m, double t0,
                                        const Sampling& sampling = {},
                                        const RootFinderOptions& options = {});

/// Characteristic polynomial coefficients (low to high) of a complex matrix
/// given row-major, by Faddeev-LeVerrier.
std::vector<Complex> numeric_char_poly(std::span<const Complex> entries, std::size_t n);

/// Residual H(p0) - reduced_shadow(p0) - sum_g c_g(p0) g(t0) over the grid;
/// passes when it shrinks like t0^2 (factor within [0.5, 2] of the ideal).
ConvergenceReport verify_transfer(const RationalFunction& h, const SimplificationReport& report,
                                  Complex p0, std::vector<double> grid,
                                  const Sampling& sampling = {});

}  // namespace perturb::oracle
