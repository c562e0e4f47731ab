#pragma once

// Class-weighted multinomial logistic regression.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "senti/class_weights.hpp"
#include "senti/linear.hpp"
#include "senti/optimize.hpp"
#include "senti/sparse.hpp"

namespace senti {

struct LogRegModel {
  std::size_t n_features = 0;
  std::vector<double> weights;  // kNumClasses × n_features, row-major
  std::array<double, kNumClasses> bias{};
  double lambda = 0.0;

  static LogRegModel zeros(std::size_t n_features, double lambda = 0.0) {
    return {n_features, std::vector<double>(kNumClasses * n_features, 0.0), {}, lambda};
  }

  std::span<const double> row(std::size_t c) const {
    return std::span<const double>(weights).subspan(c * n_features, n_features);
  }

  Scores logits(const SparseVector& x) const {
    Scores z{};
    for (std::size_t c = 0; c < kNumClasses; ++c) z[c] = x.dot(row(c)) + bias[c];
    return z;
  }

  bool operator==(const LogRegModel&) const = default;
};

/// Weighted softmax cross-entropy, (1/N) Σ w[y_i]·CE_i + (λ/2)‖W‖²_F, over
/// the packed parameter vector [W row-major | b]. A null `weights` gives the
/// unweighted loss.
struct LogRegObjective {
  std::span<const SparseVector> X;
  std::span<const SentimentLabel> y;
  const ClassWeights* weights = nullptr;
  double lambda = 0.0;
  std::size_t n_features = 0;

  std::size_t n_params() const { return kNumClasses * n_features + kNumClasses; }

  double operator()(std::span<const double> params, std::span<double> grad) const {
    const std::size_t V = n_features;
    const auto W = params.first(kNumClasses * V);
    const auto b = params.subspan(kNumClasses * V, kNumClasses);
    std::fill(grad.begin(), grad.end(), 0.0);
    auto gW = grad.first(kNumClasses * V);
    auto gb = grad.subspan(kNumClasses * V, kNumClasses);

    const double inv_n = 1.0 / static_cast<double>(X.size());
    double data_loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      const auto& x = X[i];
      const std::size_t yi = ordinal(y[i]);
      Scores z{};
      for (std::size_t c = 0; c < kNumClasses; ++c) z[c] = x.dot(W.subspan(c * V, V)) + b[c];
      double m = z[0];
      for (double v : z) m = std::max(m, v);
      double sum = 0.0;
      for (double v : z) sum += std::exp(v - m);
      const double lse = m + std::log(sum);
      const double ce = lse - z[yi];

      double scale = inv_n;
      if (weights) {
        const double w = (*weights)[yi];
        data_loss += w * ce;
        scale = w * inv_n;
      } else {
        data_loss += ce;
      }
      for (std::size_t c = 0; c < kNumClasses; ++c) {
        const double p = std::exp(z[c] - lse);
        const double g = scale * (p - (c == yi ? 1.0 : 0.0));
        gb[c] += g;
        axpy(g, x, gW.subspan(c * V, V));
      }
    }

    double reg = 0.0;
    for (std::size_t k = 0; k < W.size(); ++k) {
      reg += W[k] * W[k];
      gW[k] += lambda * W[k];
    }
    return data_loss * inv_n + 0.5 * lambda * reg;
  }
};

struct LogRegFit {
  LogRegModel model;
  TrainingSummary summary;
};

/// Full-batch descent from W = 0, b = 0; biases are not regularized.
inline LogRegFit train_logreg(std::span<const SparseVector> X, std::span<const SentimentLabel> y,
                              std::size_t n_features, const ClassWeights& cw, const TrainConfig& cfg = {}) {
  cfg.validate();
  validate_training_data(X, y, n_features);

  LogRegObjective objective{X, y, &cw, cfg.lambda, n_features};
  DescentConfig dc;
  dc.max_iter = cfg.max_iter;
  dc.tol = cfg.tol;
  auto result = minimize(objective, std::vector<double>(objective.n_params(), 0.0), dc);
  if (!all_finite(result.params)) throw Error(ErrorKind::NonFinite, "logistic regression parameters diverged");

  LogRegFit fit;
  fit.model.n_features = n_features;
  fit.model.lambda = cfg.lambda;
  fit.model.weights.assign(result.params.begin(), result.params.begin() + static_cast<std::ptrdiff_t>(kNumClasses * n_features));
  for (std::size_t c = 0; c < kNumClasses; ++c) fit.model.bias[c] = result.params[kNumClasses * n_features + c];
  fit.summary = {result.iterations, result.converged, result.loss, result.grad_inf_norm, std::move(result.loss_trace)};
  return fit;
}

/// Scores are softmax probabilities.
inline Prediction predict_logreg(const LogRegModel& model, const SparseVector& x) {
  Prediction p;
  p.scores = softmax(model.logits(x));
  p.label = argmax(p.scores);
  return p;
}

}  // namespace senti
