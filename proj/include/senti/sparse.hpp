#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace senti {

/// Index/value pairs with strictly ascending indices and no explicit zeros.
struct SparseVector {
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  std::size_t nnz() const noexcept { return indices.size(); }
  bool empty() const noexcept { return indices.empty(); }

  double dot(std::span<const double> dense) const noexcept {
    double sum = 0.0;
    for (std::size_t k = 0; k < indices.size(); ++k) sum += values[k] * dense[indices[k]];
    return sum;
  }

  double norm() const noexcept {
    double sq = 0.0;
    for (double v : values) sq += v * v;
    return std::sqrt(sq);
  }

  bool operator==(const SparseVector&) const = default;
};

/// Adds `scale * x` into a dense row.
inline void axpy(double scale, const SparseVector& x, std::span<double> dense) noexcept {
  for (std::size_t k = 0; k < x.indices.size(); ++k) dense[x.indices[k]] += scale * x.values[k];
}

}  // namespace senti
