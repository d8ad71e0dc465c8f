#pragma once

// Reduction of uncertain transfer functions H(p) = Y(p) / X(p) by their PGCD.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "perturb/exact_poly.hpp"
#include "perturb/ppoly.hpp"

namespace perturb {

struct RationalFunction {
  PerturbedPolynomial num;
  PerturbedPolynomial den;
};

/// Per-generator first-order coefficients c_g(p), in ring generator order.
using FirstOrderMap = std::vector<std::pair<std::string, ExactRational>>;

struct SimplificationReport {
  ExactRational reduced_shadow;
  PerturbedPolynomial pgcd;
  std::vector<RemainderStep> trace;
  /// num = pgcd * num_quotient + num_residual
  PerturbedPolynomial num_quotient;
  PerturbedPolynomial num_residual;
  /// den = pgcd * den_quotient + den_residual
  PerturbedPolynomial den_quotient;
  PerturbedPolynomial den_residual;
  FirstOrderMap first_order;
};

SimplificationReport simplify(const RationalFunction& h);

/// c_g = (N_g D0 - N0 D_g) / D0^2 where N = N0 + sum_g g N_g + ..., likewise D.
FirstOrderMap first_order_correction(const RationalFunction& h);

struct ProjectedCorrection {
  TruncatedSeries alpha1;
  std::vector<GaussianRational> direction;
  /// sum_g U1[g] c_g(p); H - reduced_shadow ~ alpha1 * correction.
  ExactRational correction;
};

/// First-order correction along the leading Goze direction of the generator
/// vector after specializing every generator into a single-generator ring.
ProjectedCorrection goze_projected_correction(
    const RationalFunction& h, const std::map<std::string, TruncatedSeries>& specialization);

}  // namespace perturb
