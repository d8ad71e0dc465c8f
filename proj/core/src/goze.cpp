#include "perturb/goze.hpp"

#include <algorithm>

#include "perturb/error.hpp"
#include "perturb/linalg.hpp"

namespace perturb {

namespace {

std::size_t pivot_index(const std::vector<TruncatedSeries>& v) {
  std::size_t best = v.size();
  int best_val = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto val = v[i].valuation();
    if (!val) continue;
    if (best == v.size() || *val < best_val) {
      best = i;
      best_val = *val;
    }
  }
  return best;
}

}  // namespace

GozeDecomposition decompose(const std::vector<TruncatedSeries>& entries) {
  if (entries.empty()) throw DomainError("Goze decomposition needs a vector of dimension >= 1");
  const RingPtr ring = entries.front().ring();
  if (ring->arity() != 1) {
    throw DomainError("Goze decomposition is defined over a single-generator ring; specialize first");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!same_ring(entries[i].ring(), ring)) throw IncompatibleRing("entries belong to different rings");
    if (!entries[i].is_infinitesimal()) {
      throw DomainError("entry " + std::to_string(i) + " (" + entries[i].to_string() +
                        ") is not infinitesimal");
    }
  }

  GozeDecomposition d;
  d.ring = ring;
  d.dimension = entries.size();
  std::vector<TruncatedSeries> current = entries;
  TruncatedSeries scale(ring, 1);

  while (true) {
    const std::size_t pivot = pivot_index(current);
    if (pivot == current.size()) break;

    TruncatedSeries alpha = current[pivot];
    scale *= alpha;
    if (scale.is_zero()) {
      // The remaining levels would only carry terms of degree > T.
      d.truncation_limited = true;
      break;
    }

    const LaurentScalar alpha_inv = LaurentScalar::from_series(alpha).inverse();
    std::vector<GaussianRational> direction(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (current[i].is_zero()) continue;
      TruncatedSeries quotient =
          i == pivot ? TruncatedSeries(ring, 1)
                     : (LaurentScalar::from_series(current[i]) * alpha_inv).to_series();
      direction[i] = quotient.standard_part();
      current[i] = quotient - TruncatedSeries(ring, direction[i]);
    }
    d.levels.push_back({std::move(alpha), std::move(direction)});
  }

  // Each level owns a pivot coordinate that is zero in every later direction,
  // so the directions are independent by construction.
  std::vector<std::vector<GaussianRational>> rows;
  for (const auto& level : d.levels) rows.push_back(level.direction);
  if (exact_rank(rows) != d.levels.size()) {
    throw Error("internal error: Goze directions are linearly dependent");
  }
  return d;
}

std::vector<TruncatedSeries> reconstruct(const GozeDecomposition& d) {
  std::vector<TruncatedSeries> out(d.dimension, TruncatedSeries(d.ring));
  TruncatedSeries scale(d.ring, 1);
  for (const auto& level : d.levels) {
    scale *= level.alpha;
    for (std::size_t i = 0; i < d.dimension; ++i) {
      if (!level.direction[i].is_zero()) out[i] += scale * level.direction[i];
    }
  }
  return out;
}

}  // namespace perturb
