#pragma once

// Raw text → cleaned text → features → prediction → explanation. The CLI
// and the HTTP service both go through `infer`.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "senti/classifier.hpp"
#include "senti/corpus.hpp"
#include "senti/features.hpp"
#include "senti/persistence.hpp"

namespace senti {

enum class ScoreKind { Probability, Margin };

inline std::string_view to_string(ScoreKind kind) { return kind == ScoreKind::Probability ? "probability" : "margin"; }

inline constexpr std::size_t kTopFeatures = 5;

struct Inference {
  std::string cleaned_text;
  Prediction prediction;        // raw model output
  ScoreKind score_kind = ScoreKind::Probability;
  Scores scores{};              // probabilities (logreg, nb) or margins (svm)
  std::vector<Contribution> top_features;
  std::optional<std::string> warning;
};

inline Inference infer(const ModelBundle& bundle, std::string_view raw_text, std::size_t top_k = kTopFeatures) {
  Inference out;
  out.cleaned_text = preprocess_text(raw_text);
  const SparseVector x = transform(out.cleaned_text, bundle.vocab, bundle.features);
  out.prediction = predict(bundle.model, x);
  switch (kind_of(bundle.model)) {
    case ModelKind::LogReg:
      out.scores = out.prediction.scores;
      break;
    case ModelKind::Svm:
      out.score_kind = ScoreKind::Margin;
      out.scores = out.prediction.scores;
      break;
    case ModelKind::Nb:
      out.scores = softmax(out.prediction.scores);
      break;
  }
  out.top_features = explain(bundle.model, x, bundle.vocab, top_k, out.prediction.label);
  if (out.cleaned_text.empty()) {
    out.warning = "empty_after_cleaning: prediction uses class bias/prior only";
  } else if (x.empty()) {
    out.warning = "no_known_terms: prediction uses class bias/prior only";
  }
  return out;
}

inline nlohmann::json to_json(const Inference& inf) {
  nlohmann::json scores = nlohmann::json::object();
  for (std::size_t c = 0; c < kNumClasses; ++c) scores[std::string(kClassNames[c])] = inf.scores[c];
  nlohmann::json features = nlohmann::json::array();
  for (const auto& f : inf.top_features) features.push_back({{"term", f.term}, {"contribution", f.value}});
  nlohmann::json j = {{"label", std::string(class_name(inf.prediction.label))},
                      {"scores", scores},
                      {"score_kind", std::string(to_string(inf.score_kind))},
                      {"top_features", features},
                      {"cleaned_text", inf.cleaned_text}};
  j["warning"] = inf.warning ? nlohmann::json(*inf.warning) : nlohmann::json(nullptr);
  return j;
}

}  // namespace senti
