#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "senti/error.hpp"
#include "senti/features.hpp"
#include "senti/logreg.hpp"
#include "senti/naive_bayes.hpp"
#include "senti/svm.hpp"

namespace senti {

enum class ModelKind { LogReg, Svm, Nb };

inline std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogReg: return "logreg";
    case ModelKind::Svm: return "svm";
    case ModelKind::Nb: return "nb";
  }
  return "unknown";
}

inline ModelKind parse_model_kind(std::string_view text) {
  if (text == "logreg") return ModelKind::LogReg;
  if (text == "svm") return ModelKind::Svm;
  if (text == "nb") return ModelKind::Nb;
  throw Error(ErrorKind::InvalidArgument, "unknown model type '" + std::string(text) + "'");
}

using TrainedModel = std::variant<LogRegModel, SvmModel, NbModel>;

inline ModelKind kind_of(const TrainedModel& model) { return static_cast<ModelKind>(model.index()); }

inline std::size_t feature_count(const TrainedModel& model) {
  return std::visit([](const auto& m) { return m.n_features; }, model);
}

inline Prediction predict(const TrainedModel& model, const SparseVector& x) {
  return std::visit(
      [&](const auto& m) -> Prediction {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, LogRegModel>) return predict_logreg(m, x);
        else if constexpr (std::is_same_v<M, SvmModel>) return predict_svm(m, x);
        else return predict_nb(m, x);
      },
      model);
}

struct Contribution {
  std::string term;
  double value = 0.0;

  bool operator==(const Contribution&) const = default;
};

/// Top-k nonzero contributions w_{c,t}·x_t toward `predicted`, largest
/// first, ties by term.
template <typename LinearModel>
std::vector<Contribution> explain_linear(const LinearModel& model, const SparseVector& x, const Vocabulary& vocab,
                                         std::size_t k, SentimentLabel predicted) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  const auto row = model.row(ordinal(predicted));
  std::vector<Contribution> out;
  for (std::size_t j = 0; j < x.indices.size(); ++j) {
    const double value = row[x.indices[j]] * x.values[j];
    if (value != 0.0) out.push_back({vocab.term(x.indices[j]), value});
  }
  std::sort(out.begin(), out.end(), [](const Contribution& a, const Contribution& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.term < b.term;
  });
  if (out.size() > k) out.resize(k);
  return out;
}

template <typename LinearModel>
std::vector<Contribution> explain_linear(const LinearModel& model, const SparseVector& x, const Vocabulary& vocab,
                                         std::size_t k) {
  Scores s{};
  for (std::size_t c = 0; c < kNumClasses; ++c) s[c] = x.dot(model.row(c)) + model.bias[c];
  return explain_linear(model, x, vocab, k, argmax(s));
}

/// Empty for Naive Bayes.
inline std::vector<Contribution> explain(const TrainedModel& model, const SparseVector& x, const Vocabulary& vocab,
                                         std::size_t k, SentimentLabel predicted) {
  if (const auto* m = std::get_if<LogRegModel>(&model)) return explain_linear(*m, x, vocab, k, predicted);
  if (const auto* m = std::get_if<SvmModel>(&model)) return explain_linear(*m, x, vocab, k, predicted);
  return {};
}

}  // namespace senti
