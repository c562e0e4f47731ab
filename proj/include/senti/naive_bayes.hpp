#pragma once

// Multinomial Naive Bayes over fractional (TF-IDF) feature mass. Unweighted.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "senti/linear.hpp"
#include "senti/sparse.hpp"

namespace senti {

struct NbModel {
  std::size_t n_features = 0;
  std::array<double, kNumClasses> log_prior{};
  std::vector<double> log_likelihood;  // kNumClasses × n_features, row-major; may hold -inf when alpha = 0
  double alpha = 1.0;

  std::span<const double> row(std::size_t c) const {
    return std::span<const double>(log_likelihood).subspan(c * n_features, n_features);
  }

  bool operator==(const NbModel&) const = default;
};

/// log_prior_c = ln(n_c/N); log_likelihood_{c,t} = ln((S_ct + α) / (S_c + αV)).
/// A class with zero total mass and α = 0 gets a uniform row.
inline NbModel train_nb(std::span<const SparseVector> X, std::span<const SentimentLabel> y, std::size_t n_features,
                        double alpha = 1.0) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error(ErrorKind::InvalidArgument, "alpha must be >= 0");
  validate_training_data(X, y, n_features);

  NbModel model;
  model.n_features = n_features;
  model.alpha = alpha;
  model.log_likelihood.assign(kNumClasses * n_features, 0.0);

  std::vector<double> mass(kNumClasses * n_features, 0.0);
  for (std::size_t i = 0; i < X.size(); ++i) {
    axpy(1.0, X[i], std::span<double>(mass).subspan(ordinal(y[i]) * n_features, n_features));
  }

  const auto counts = count_classes(y);
  const double n = static_cast<double>(y.size());
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    model.log_prior[c] = std::log(static_cast<double>(counts[c]) / n);
    const auto class_mass = std::span<const double>(mass).subspan(c * n_features, n_features);
    double total = 0.0;
    for (double m : class_mass) total += m;
    const double denom = total + alpha * static_cast<double>(n_features);
    for (std::size_t t = 0; t < n_features; ++t) {
      model.log_likelihood[c * n_features + t] =
          denom > 0.0 ? std::log((class_mass[t] + alpha) / denom) : -std::log(static_cast<double>(n_features));
    }
  }
  return model;
}

/// Scores are unnormalized log posteriors. Only terms present in `x`
/// contribute, so a -inf likelihood never meets a zero weight.
inline Prediction predict_nb(const NbModel& model, const SparseVector& x) {
  Prediction p;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    const auto row = model.row(c);
    double score = model.log_prior[c];
    for (std::size_t k = 0; k < x.indices.size(); ++k) {
      if (x.values[k] != 0.0) score += x.values[k] * row[x.indices[k]];
    }
    p.scores[c] = score;
  }
  p.label = argmax(p.scores);
  return p;
}

}  // namespace senti
