#pragma once

// Versioned JSON model envelope. Keys are emitted in sorted order and reals
// in shortest round-trip form, so load → save reproduces the same bytes.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "senti/class_weights.hpp"
#include "senti/classifier.hpp"
#include "senti/corpus.hpp"
#include "senti/error.hpp"
#include "senti/features.hpp"

namespace senti {

inline constexpr int kFormatVersion = 1;

struct TrainingMetadata {
  std::uint64_t seed = 42;
  WeightMode weight_mode = WeightMode::Balanced;
  double lambda = 0.0;
  double alpha = 0.0;  // Naive Bayes smoothing; unused by linear models
  ClassCounts class_counts{};
  ClassWeights class_weights{};
  std::uint64_t iterations = 0;
  bool converged = false;
  std::string trained_at;

  bool operator==(const TrainingMetadata&) const = default;
};

struct ModelBundle {
  TrainedModel model;
  Vocabulary vocab;
  FeatureConfig features;
  TrainingMetadata metadata;
};

/// UTC ISO-8601 time; honours SOURCE_DATE_EPOCH for reproducible builds.
inline std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {

using nlohmann::json;

[[noreturn]] inline void corrupt(const std::string& what) { throw Error(ErrorKind::CorruptEnvelope, what); }

inline json sparse_rows(const std::vector<double>& weights, std::size_t n_features) {
  json rows = json::array();
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    json row = json::array();
    for (std::size_t t = 0; t < n_features; ++t) {
      const double v = weights[c * n_features + t];
      if (v != 0.0) row.push_back(json::array({t, v}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline double finite_number(const json& j, const std::string& where) {
  if (!j.is_number()) corrupt(where + " is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) corrupt(where + " is not finite");
  return v;
}

inline std::vector<double> dense_from_sparse_rows(const json& rows, std::size_t n_features) {
  if (!rows.is_array() || rows.size() != kNumClasses) {
    corrupt("weights must have exactly " + std::to_string(kNumClasses) + " rows");
  }
  std::vector<double> weights(kNumClasses * n_features, 0.0);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    std::int64_t previous = -1;
    for (const auto& pair : rows[c]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned()) corrupt("malformed weight entry");
      const auto index = pair[0].get<std::uint64_t>();
      if (index >= n_features || static_cast<std::int64_t>(index) <= previous) corrupt("weight index out of order or range");
      previous = static_cast<std::int64_t>(index);
      weights[c * n_features + index] = finite_number(pair[1], "weight");
    }
  }
  return weights;
}

inline json bias_json(const std::array<double, kNumClasses>& bias) { return json(bias); }

inline std::array<double, kNumClasses> bias_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.size() != kNumClasses) corrupt(std::string(name) + " must have " + std::to_string(kNumClasses) + " entries");
  std::array<double, kNumClasses> out{};
  for (std::size_t c = 0; c < kNumClasses; ++c) out[c] = finite_number(j[c], name);
  return out;
}

// -inf is legitimate in NB likelihoods (alpha = 0) and has no JSON literal.
inline json log_value(double v) { return std::isinf(v) && v < 0 ? json("-inf") : json(v); }

inline double log_value_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "-inf") return -std::numeric_limits<double>::infinity();
  return finite_number(j, "log_likelihood");
}

}  // namespace detail

inline nlohmann::json envelope_to_json(const ModelBundle& bundle) {
  using nlohmann::json;
  const auto& f = bundle.features;
  const auto& md = bundle.metadata;

  json terms = json::array();
  for (const auto& e : bundle.vocab.entries()) terms.push_back(json::array({e.term, e.doc_freq, e.idf}));

  json params;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NbModel>) {
          json rows = json::array();
          for (std::size_t c = 0; c < kNumClasses; ++c) {
            json row = json::array();
            for (double v : m.row(c)) row.push_back(detail::log_value(v));
            rows.push_back(std::move(row));
          }
          params = {{"alpha", m.alpha}, {"log_prior", detail::bias_json(m.log_prior)}, {"log_likelihood", rows}};
        } else {
          params = {{"lambda", m.lambda},
                    {"bias", detail::bias_json(m.bias)},
                    {"weights", detail::sparse_rows(m.weights, m.n_features)}};
        }
      },
      bundle.model);

  json class_names = json::array();
  for (auto name : kClassNames) class_names.push_back(std::string(name));

  return {{"format_version", kFormatVersion},
          {"model_type", std::string(to_string(kind_of(bundle.model)))},
          {"class_names", class_names},
          {"feature_config",
           {{"ngram_min", f.ngram_min},
            {"ngram_max", f.ngram_max},
            {"max_features", f.max_features},
            {"min_df", f.min_df},
            {"sublinear_tf", f.sublinear_tf}}},
          {"vocabulary", {{"n_docs", bundle.vocab.n_docs()}, {"terms", terms}}},
          {"parameters", params},
          {"training_metadata",
           {{"seed", md.seed},
            {"weight_mode", std::string(to_string(md.weight_mode))},
            {"lambda", md.lambda},
            {"alpha", md.alpha},
            {"class_counts", md.class_counts},
            {"class_weights", md.class_weights.w},
            {"iterations", md.iterations},
            {"converged", md.converged},
            {"trained_at", md.trained_at}}}};
}

inline std::string serialize_envelope(const ModelBundle& bundle) { return envelope_to_json(bundle).dump(2) + "\n"; }

inline ModelBundle envelope_from_json(const nlohmann::json& j) {
  using nlohmann::json;
  try {
    if (!j.is_object()) detail::corrupt("envelope is not an object");
    if (!j.contains("format_version") || !j["format_version"].is_number_integer()) detail::corrupt("missing format_version");
    const auto version = j["format_version"].get<std::int64_t>();
    if (version != kFormatVersion) {
      throw Error(ErrorKind::UnsupportedVersion, "format_version " + std::to_string(version) + " is not supported");
    }

    const auto names = j.at("class_names").get<std::vector<std::string>>();
    if (names.size() != kNumClasses) detail::corrupt("class_names must have 3 entries");
    for (std::size_t c = 0; c < kNumClasses; ++c) {
      if (names[c] != kClassNames[c]) detail::corrupt("unexpected class name '" + names[c] + "'");
    }

    ModelBundle bundle;
    const auto& fc = j.at("feature_config");
    bundle.features.ngram_min = fc.at("ngram_min").get<std::size_t>();
    bundle.features.ngram_max = fc.at("ngram_max").get<std::size_t>();
    bundle.features.max_features = fc.at("max_features").get<std::size_t>();
    bundle.features.min_df = fc.at("min_df").get<std::size_t>();
    bundle.features.sublinear_tf = fc.at("sublinear_tf").get<bool>();
    try {
      bundle.features.validate();
    } catch (const Error& e) {
      detail::corrupt(e.what());
    }

    const auto& vj = j.at("vocabulary");
    std::vector<Vocabulary::Entry> entries;
    for (const auto& t : vj.at("terms")) {
      if (!t.is_array() || t.size() != 3) detail::corrupt("malformed vocabulary entry");
      entries.push_back({t[0].get<std::string>(), t[1].get<std::uint64_t>(), detail::finite_number(t[2], "idf")});
    }
    bundle.vocab = Vocabulary(std::move(entries), vj.at("n_docs").get<std::uint64_t>());
    const std::size_t V = bundle.vocab.size();

    const auto type = j.at("model_type").get<std::string>();
    const auto& p = j.at("parameters");
    if (type == "logreg" || type == "svm") {
      const auto weights = detail::dense_from_sparse_rows(p.at("weights"), V);
      const auto bias = detail::bias_from_json(p.at("bias"), "bias");
      const double lambda = detail::finite_number(p.at("lambda"), "lambda");
      if (type == "logreg") bundle.model = LogRegModel{V, weights, bias, lambda};
      else bundle.model = SvmModel{V, weights, bias, lambda};
    } else if (type == "nb") {
      NbModel nb;
      nb.n_features = V;
      nb.alpha = detail::finite_number(p.at("alpha"), "alpha");
      nb.log_prior = detail::bias_from_json(p.at("log_prior"), "log_prior");
      const auto& rows = p.at("log_likelihood");
      if (!rows.is_array() || rows.size() != kNumClasses) detail::corrupt("log_likelihood must have 3 rows");
      nb.log_likelihood.reserve(kNumClasses * V);
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != V) detail::corrupt("log_likelihood row length differs from vocabulary size");
        for (const auto& v : row) nb.log_likelihood.push_back(detail::log_value_from_json(v));
      }
      bundle.model = std::move(nb);
    } else {
      detail::corrupt("unknown model_type '" + type + "'");
    }

    const auto& md = j.at("training_metadata");
    bundle.metadata.seed = md.at("seed").get<std::uint64_t>();
    bundle.metadata.weight_mode = parse_weight_mode(md.at("weight_mode").get<std::string>());
    bundle.metadata.lambda = md.at("lambda").get<double>();
    bundle.metadata.alpha = md.at("alpha").get<double>();
    bundle.metadata.class_counts = md.at("class_counts").get<ClassCounts>();
    bundle.metadata.class_weights.w = md.at("class_weights").get<std::array<double, kNumClasses>>();
    bundle.metadata.iterations = md.at("iterations").get<std::uint64_t>();
    bundle.metadata.converged = md.at("converged").get<bool>();
    bundle.metadata.trained_at = md.at("trained_at").get<std::string>();
    return bundle;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::CorruptEnvelope, e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnsupportedVersion || e.kind() == ErrorKind::CorruptEnvelope) throw;
    throw Error(ErrorKind::CorruptEnvelope, e.what());
  }
}

inline ModelBundle parse_envelope(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::CorruptEnvelope, e.what());
  }
  return envelope_from_json(j);
}

inline void save_model(const ModelBundle& bundle, const std::filesystem::path& path) {
  write_file(path, serialize_envelope(bundle));
}

inline ModelBundle load_model(const std::filesystem::path& path) { return parse_envelope(read_file(path)); }

}  // namespace senti
