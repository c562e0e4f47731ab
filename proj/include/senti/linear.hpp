#pragma once

// Shared pieces of the three classifiers.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "senti/class_weights.hpp"
#include "senti/error.hpp"
#include "senti/label.hpp"
#include "senti/sparse.hpp"

namespace senti {

using Scores = std::array<double, kNumClasses>;

struct Prediction {
  SentimentLabel label = SentimentLabel::Negatif;
  Scores scores{};

  bool operator==(const Prediction&) const = default;
};

/// Ties resolve to the lowest ordinal.
inline SentimentLabel argmax(const Scores& scores) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumClasses; ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return static_cast<SentimentLabel>(best);
}

inline Scores softmax(const Scores& logits) {
  double m = logits[0];
  for (double z : logits) m = std::max(m, z);
  Scores p{};
  if (!std::isfinite(m)) {
    // All logits -inf: nothing distinguishes the classes.
    p.fill(1.0 / static_cast<double>(kNumClasses));
    return p;
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < kNumClasses; ++c) sum += (p[c] = std::exp(logits[c] - m));
  for (double& v : p) v /= sum;
  return p;
}

struct TrainConfig {
  std::size_t max_iter = 1000;
  double tol = 1e-6;
  double lambda = 1e-4;
  WeightMode weight_mode = WeightMode::Balanced;

  void validate() const {
    if (max_iter < 1) throw Error(ErrorKind::InvalidArgument, "max_iter must be >= 1");
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be > 0");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error(ErrorKind::InvalidArgument, "lambda must be >= 0");
  }
};

/// Optimizer diagnostics for one fitted problem.
struct TrainingSummary {
  std::size_t iterations = 0;
  bool converged = false;
  double final_loss = 0.0;
  double grad_inf_norm = 0.0;
  std::vector<double> loss_trace;
};

inline void validate_training_data(std::span<const SparseVector> X, std::span<const SentimentLabel> y,
                                   std::size_t n_features) {
  if (X.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch,
                std::to_string(X.size()) + " feature rows but " + std::to_string(y.size()) + " labels");
  }
  const auto counts = count_classes(y);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (counts[c] == 0) {
      throw Error(ErrorKind::DegenerateData, "class '" + std::string(kClassNames[c]) + "' absent from training data");
    }
  }
  for (const auto& x : X) {
    if (!x.indices.empty() && x.indices.back() >= n_features) {
      throw Error(ErrorKind::InvalidArgument, "feature index out of range");
    }
  }
}

inline bool all_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace senti
