#pragma once

// Nested-scale decomposition of an infinitesimal vector,
//   E = a1 U1 + a1 a2 U2 + ... + a1 ... al Ul,
// with infinitesimal scales ai and constant, linearly independent Ui.

#include <cstddef>
#include <vector>

#include "perturb/gaussian_rational.hpp"
#include "perturb/series.hpp"

namespace perturb {

struct GozeLevel {
  TruncatedSeries alpha;
  std::vector<GaussianRational> direction;
};

struct GozeDecomposition {
  RingPtr ring;
  std::size_t dimension = 0;
  std::vector<GozeLevel> levels;
  /// Set when trailing levels vanished because a1...ak exceeded the truncation order.
  bool truncation_limited = false;

  std::size_t rank() const noexcept { return levels.size(); }
};

/// Pivot-and-absorb decomposition over a single-generator ring. The first
/// scale of every level is the literal entry of minimal valuation (lowest
/// index on ties), so the result is fully determined by the input.
GozeDecomposition decompose(const std::vector<TruncatedSeries>& entries);

/// sum_k (a1 ... ak) Uk, truncated.
std::vector<TruncatedSeries> reconstruct(const GozeDecomposition& d);

inline std::size_t rank(const GozeDecomposition& d) { return d.rank(); }

}  // namespace perturb
