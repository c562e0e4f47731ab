#pragma once

// One-vs-rest linear SVM trained on the class-weighted squared hinge.

#include <array>
#include <cstddef>
#include <future>
#include <span>
#include <vector>

#include "senti/class_weights.hpp"
#include "senti/linear.hpp"
#include "senti/optimize.hpp"
#include "senti/sparse.hpp"

namespace senti {

struct SvmModel {
  std::size_t n_features = 0;
  std::vector<double> weights;  // kNumClasses × n_features, row-major
  std::array<double, kNumClasses> bias{};
  double lambda = 0.0;

  static SvmModel zeros(std::size_t n_features, double lambda = 0.0) {
    return {n_features, std::vector<double>(kNumClasses * n_features, 0.0), {}, lambda};
  }

  std::span<const double> row(std::size_t c) const {
    return std::span<const double>(weights).subspan(c * n_features, n_features);
  }

  Scores decision(const SparseVector& x) const {
    Scores s{};
    for (std::size_t c = 0; c < kNumClasses; ++c) s[c] = x.dot(row(c)) + bias[c];
    return s;
  }

  bool operator==(const SvmModel&) const = default;
};

/// Binary problem over [w | b]:
///   (λ/2)‖w‖² + (1/N) Σ s_i · max(0, 1 − t_i(w·x_i + b))²
/// with targets t_i ∈ {−1, +1}. Empty `sample_weights` means unweighted.
struct SquaredHingeObjective {
  std::span<const SparseVector> X;
  std::span<const double> targets;
  std::span<const double> sample_weights;
  double lambda = 0.0;
  std::size_t n_features = 0;

  std::size_t n_params() const { return n_features + 1; }

  double operator()(std::span<const double> params, std::span<double> grad) const {
    const auto w = params.first(n_features);
    const double b = params[n_features];
    std::fill(grad.begin(), grad.end(), 0.0);
    auto gw = grad.first(n_features);

    const double inv_n = 1.0 / static_cast<double>(X.size());
    double data_loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
      const double t = targets[i];
      const double slack = 1.0 - t * (X[i].dot(w) + b);
      if (slack <= 0.0) continue;
      double scale = inv_n;
      if (!sample_weights.empty()) {
        const double s = sample_weights[i];
        data_loss += s * (slack * slack);
        scale = s * inv_n;
      } else {
        data_loss += slack * slack;
      }
      const double g = -2.0 * scale * slack * t;
      grad[n_features] += g;
      axpy(g, X[i], gw);
    }

    double reg = 0.0;
    for (std::size_t k = 0; k < n_features; ++k) {
      reg += w[k] * w[k];
      gw[k] += lambda * w[k];
    }
    return data_loss * inv_n + 0.5 * lambda * reg;
  }
};

struct SvmFit {
  SvmModel model;
  std::array<TrainingSummary, kNumClasses> summaries;
};

/// The three subproblems are independent and run concurrently; each is
/// deterministic, so the result does not depend on scheduling.
inline SvmFit train_svm_ovr(std::span<const SparseVector> X, std::span<const SentimentLabel> y,
                            std::size_t n_features, const ClassWeights& cw, const TrainConfig& cfg = {}) {
  cfg.validate();
  validate_training_data(X, y, n_features);

  std::vector<double> sample_weights(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) sample_weights[i] = cw[y[i]];

  DescentConfig dc;
  dc.max_iter = cfg.max_iter;
  dc.tol = cfg.tol;

  auto solve = [&](std::size_t c) {
    std::vector<double> targets(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) targets[i] = ordinal(y[i]) == c ? 1.0 : -1.0;
    SquaredHingeObjective objective{X, targets, sample_weights, cfg.lambda, n_features};
    return minimize(objective, std::vector<double>(objective.n_params(), 0.0), dc);
  };

  std::array<std::future<DescentResult>, kNumClasses> jobs;
  for (std::size_t c = 0; c < kNumClasses; ++c) jobs[c] = std::async(std::launch::async, solve, c);

  SvmFit fit;
  fit.model = SvmModel::zeros(n_features, cfg.lambda);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    auto result = jobs[c].get();
    if (!all_finite(result.params)) throw Error(ErrorKind::NonFinite, "svm parameters diverged");
    std::copy(result.params.begin(), result.params.begin() + static_cast<std::ptrdiff_t>(n_features),
              fit.model.weights.begin() + static_cast<std::ptrdiff_t>(c * n_features));
    fit.model.bias[c] = result.params[n_features];
    fit.summaries[c] = {result.iterations, result.converged, result.loss, result.grad_inf_norm,
                        std::move(result.loss_trace)};
  }
  return fit;
}

/// Scores are raw margins w_c·x + b_c.
inline Prediction predict_svm(const SvmModel& model, const SparseVector& x) {
  Prediction p;
  p.scores = model.decision(x);
  p.label = argmax(p.scores);
  return p;
}

}  // namespace senti
