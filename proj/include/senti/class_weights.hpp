#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "senti/error.hpp"
#include "senti/label.hpp"

namespace senti {

enum class WeightMode { Balanced, Uniform };

inline std::string_view to_string(WeightMode mode) {
  return mode == WeightMode::Balanced ? "balanced" : "uniform";
}

inline WeightMode parse_weight_mode(std::string_view text) {
  if (text == "balanced") return WeightMode::Balanced;
  if (text == "uniform") return WeightMode::Uniform;
  throw Error(ErrorKind::InvalidArgument, "unknown weight mode '" + std::string(text) + "'");
}

using ClassCounts = std::array<std::uint64_t, kNumClasses>;

/// Per-class loss multipliers indexed by class ordinal.
struct ClassWeights {
  std::array<double, kNumClasses> w{1.0, 1.0, 1.0};

  double operator[](std::size_t c) const { return w[c]; }
  double operator[](SentimentLabel label) const { return w[ordinal(label)]; }
  bool operator==(const ClassWeights&) const = default;
};

inline ClassCounts count_classes(std::span<const SentimentLabel> labels) {
  ClassCounts counts{};
  for (auto label : labels) ++counts[ordinal(label)];
  return counts;
}

/// Balanced: w_c = N / (C · n_c). Uniform: all ones.
inline ClassWeights compute_class_weights(const ClassCounts& counts, WeightMode mode) {
  ClassWeights weights;
  if (mode == WeightMode::Uniform) return weights;
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (counts[c] == 0) {
      throw Error(ErrorKind::ZeroClassCount,
                  "class '" + std::string(kClassNames[c]) + "' has no samples; balanced weights undefined");
    }
    total += counts[c];
  }
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    weights.w[c] = static_cast<double>(total) / (static_cast<double>(kNumClasses) * static_cast<double>(counts[c]));
  }
  return weights;
}

}  // namespace senti
