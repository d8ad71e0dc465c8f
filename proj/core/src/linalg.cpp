#include "perturb/linalg.hpp"

namespace perturb {

std::size_t exact_rank(std::vector<std::vector<GaussianRational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const GaussianRational inv = rows[rank][c].inverse();
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      const GaussianRational f = rows[r][c] * inv;
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

SeriesMatrix lift(const ConstantMatrix& m, const RingPtr& ring) {
  SeriesMatrix out(m.order(), TruncatedSeries(ring));
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) out(i, j) = TruncatedSeries(ring, m(i, j));
  }
  return out;
}

ConstantMatrix shadow(const SeriesMatrix& m) {
  ConstantMatrix out(m.order(), GaussianRational{});
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) out(i, j) = m(i, j).standard_part();
  }
  return out;
}

ConstantMatrix conjugate_transpose(const ConstantMatrix& m) {
  ConstantMatrix out(m.order(), GaussianRational{});
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) out(i, j) = m(j, i).conj();
  }
  return out;
}

ConstantMatrix identity(std::size_t n) {
  ConstantMatrix out(n, GaussianRational{});
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

ConstantMatrix matmul(const ConstantMatrix& a, const ConstantMatrix& b) {
  if (a.order() != b.order()) throw DomainError("matrix order mismatch");
  const std::size_t n = a.order();
  ConstantMatrix out(n, GaussianRational{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

}  // namespace perturb
