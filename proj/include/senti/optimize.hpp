#pragma once

// Deterministic full-batch gradient descent with Armijo backtracking.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "senti/error.hpp"

namespace senti {

struct DescentConfig {
  std::size_t max_iter = 1000;
  double tol = 1e-6;  // on the infinity norm of the gradient
  double armijo = 1e-4;
  double shrink = 0.5;
  double grow = 2.0;
  double initial_step = 1.0;
  double min_step = 1e-20;
};

struct DescentResult {
  std::vector<double> params;
  std::size_t iterations = 0;
  double loss = 0.0;
  double grad_inf_norm = 0.0;
  bool converged = false;
  /// Initial loss followed by the loss after every accepted step.
  std::vector<double> loss_trace;
};

inline double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// `objective(params, grad)` returns the loss and writes its gradient.
/// Each trial step starts from the previously accepted step length times
/// `grow` and halves until the sufficient-decrease condition holds.
template <typename Objective>
DescentResult minimize(Objective&& objective, std::vector<double> params, const DescentConfig& cfg) {
  const std::size_t n = params.size();
  std::vector<double> grad(n), trial(n), trial_grad(n);

  DescentResult result;
  double loss = objective(std::span<const double>(params), std::span<double>(grad));
  if (!std::isfinite(loss)) throw Error(ErrorKind::NonFinite, "initial loss is not finite");
  result.loss_trace.push_back(loss);

  double step = cfg.initial_step;
  double gnorm = inf_norm(grad);
  while (result.iterations < cfg.max_iter && gnorm >= cfg.tol) {
    double grad_sq = 0.0;
    for (double g : grad) grad_sq += g * g;

    bool accepted = false;
    while (step >= cfg.min_step) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = params[i] - step * grad[i];
      const double trial_loss = objective(std::span<const double>(trial), std::span<double>(trial_grad));
      if (std::isfinite(trial_loss) && trial_loss <= loss - cfg.armijo * step * grad_sq) {
        params.swap(trial);
        grad.swap(trial_grad);
        loss = trial_loss;
        accepted = true;
        break;
      }
      step *= cfg.shrink;
    }
    if (!accepted) break;  // no representable step decreases the loss

    ++result.iterations;
    result.loss_trace.push_back(loss);
    gnorm = inf_norm(grad);
    step *= cfg.grow;
  }

  if (!std::isfinite(loss)) throw Error(ErrorKind::NonFinite, "loss diverged");
  result.params = std::move(params);
  result.loss = loss;
  result.grad_inf_norm = gnorm;
  result.converged = gnorm < cfg.tol;
  return result;
}

}  // namespace senti
