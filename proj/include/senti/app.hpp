#pragma once

// The command layer behind the `senti` CLI. Each command returns a process
// exit code: 0 success, 2 usage/data error, 3 numeric failure.

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "senti/class_weights.hpp"
#include "senti/classifier.hpp"
#include "senti/corpus.hpp"
#include "senti/features.hpp"
#include "senti/metrics.hpp"
#include "senti/persistence.hpp"
#include "senti/pipeline.hpp"

namespace senti::app {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitNumericError = 3;

inline constexpr std::array<ModelKind, 3> kBenchmarkModels = {ModelKind::LogReg, ModelKind::Svm, ModelKind::Nb};

inline std::string display_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::LogReg: return "TF-IDF + Logistic Regression";
    case ModelKind::Svm: return "TF-IDF + Linear SVC";
    case ModelKind::Nb: return "TF-IDF + Multinomial Naive Bayes";
  }
  return "unknown";
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Runs `body`, translating library failures to exit codes and messages.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_numeric() ? kExitNumericError : kExitDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}

inline std::vector<SentimentLabel> labels_of(const std::vector<Review>& reviews) {
  std::vector<SentimentLabel> y;
  y.reserve(reviews.size());
  for (const auto& r : reviews) y.push_back(r.label);
  return y;
}

struct PrepareOptions {
  fs::path input;
  fs::path out_dir;
  std::uint64_t seed = 42;
  double test_fraction = 0.2;
};

struct PreparedData {
  CleanResult clean;
  DatasetSplit split;
  std::string manifest;
  nlohmann::json summary;
};

inline PreparedData prepare_data(const PrepareOptions& opt) {
  PreparedData data;
  data.clean = clean_corpus(load_csv(opt.input));
  data.split = stratified_split(data.clean.reviews, opt.test_fraction, opt.seed);
  data.manifest = split_manifest(data.split, &data.clean.source_rows);

  const auto total = count_classes(labels_of(data.clean.reviews));
  const auto train_counts = count_classes(labels_of(data.split.train));
  const auto test_counts = count_classes(labels_of(data.split.test));
  nlohmann::json per_class = nlohmann::json::object();
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    per_class[std::string(kClassNames[c])] = {{"total", total[c]}, {"train", train_counts[c]}, {"test", test_counts[c]}};
  }
  data.summary = {{"input_rows", data.clean.reviews.size() + data.clean.dropped_count},
                  {"dropped_rows", data.clean.dropped_count},
                  {"kept_rows", data.clean.reviews.size()},
                  {"train_rows", data.split.train.size()},
                  {"test_rows", data.split.test.size()},
                  {"seed", opt.seed},
                  {"test_fraction", opt.test_fraction},
                  {"per_class", per_class},
                  {"split_manifest_fnv1a64", hex64(fnv1a64(data.manifest))}};
  return data;
}

inline void write_prepared(const PreparedData& data, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  write_file(out_dir / "train.csv", reviews_to_csv(data.split.train));
  write_file(out_dir / "test.csv", reviews_to_csv(data.split.test));
  write_file(out_dir / "split_manifest.tsv", data.manifest);
  write_file(out_dir / "summary.json", data.summary.dump(2) + "\n");
}

inline void print_summary(const nlohmann::json& summary, std::ostream& out) {
  out << "rows: " << summary["input_rows"] << " read, " << summary["dropped_rows"] << " dropped (empty after cleaning), "
      << summary["train_rows"] << " train, " << summary["test_rows"] << " test\n";
  for (auto name : kClassNames) {
    const auto& pc = summary["per_class"][std::string(name)];
    out << "  " << name << ": total " << pc["total"] << ", train " << pc["train"] << ", test " << pc["test"] << "\n";
  }
}

inline int cmd_prepare(const PrepareOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto data = prepare_data(opt);
    write_prepared(data, opt.out_dir);
    print_summary(data.summary, out);
    return kExitOk;
  });
}

struct TrainOptions {
  fs::path train_csv;
  ModelKind kind = ModelKind::Svm;
  fs::path output;
  FeatureConfig features;
  TrainConfig train;
  double alpha = 1.0;
  std::uint64_t seed = 42;
};

/// Fits vocabulary and model on already-cleaned reviews.
inline ModelBundle fit_bundle(const std::vector<Review>& reviews, ModelKind kind, const FeatureConfig& features,
                              const TrainConfig& train, double alpha, std::uint64_t seed) {
  ModelBundle bundle;
  bundle.features = features;
  bundle.vocab = fit_vocabulary(reviews, features);
  const auto X = transform_all(reviews, bundle.vocab, features);
  const auto y = labels_of(reviews);
  const std::size_t V = bundle.vocab.size();

  auto& md = bundle.metadata;
  md.seed = seed;
  md.class_counts = count_classes(y);
  md.trained_at = utc_timestamp();
  switch (kind) {
    case ModelKind::LogReg: {
      md.weight_mode = train.weight_mode;
      md.lambda = train.lambda;
      md.class_weights = compute_class_weights(md.class_counts, train.weight_mode);
      auto fit = train_logreg(X, y, V, md.class_weights, train);
      md.iterations = fit.summary.iterations;
      md.converged = fit.summary.converged;
      bundle.model = std::move(fit.model);
      break;
    }
    case ModelKind::Svm: {
      md.weight_mode = train.weight_mode;
      md.lambda = train.lambda;
      md.class_weights = compute_class_weights(md.class_counts, train.weight_mode);
      auto fit = train_svm_ovr(X, y, V, md.class_weights, train);
      md.converged = true;
      for (const auto& s : fit.summaries) {
        md.iterations = std::max<std::uint64_t>(md.iterations, s.iterations);
        md.converged = md.converged && s.converged;
      }
      bundle.model = std::move(fit.model);
      break;
    }
    case ModelKind::Nb:
      md.weight_mode = WeightMode::Uniform;
      md.alpha = alpha;
      md.converged = true;
      bundle.model = train_nb(X, y, V, alpha);
      break;
  }
  return bundle;
}

inline void print_weights(const ModelBundle& bundle, std::ostream& out) {
  const auto& md = bundle.metadata;
  out << "model: " << to_string(kind_of(bundle.model)) << ", vocabulary: " << bundle.vocab.size() << " terms\n";
  out << "class counts / weights (" << to_string(md.weight_mode) << "):\n";
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", md.class_weights.w[c]);
    out << "  " << kClassNames[c] << ": n=" << md.class_counts[c] << " w=" << buf << "\n";
  }
  if (kind_of(bundle.model) != ModelKind::Nb) {
    out << "optimizer: " << md.iterations << " iterations, " << (md.converged ? "converged" : "stopped at max_iter")
        << "\n";
  }
}

inline int cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto clean = clean_corpus(load_csv(opt.train_csv));
    if (clean.reviews.empty()) throw Error(ErrorKind::EmptyCorpus, "no reviews left after cleaning");
    const auto bundle = fit_bundle(clean.reviews, opt.kind, opt.features, opt.train, opt.alpha, opt.seed);
    if (opt.output.has_parent_path()) fs::create_directories(opt.output.parent_path());
    save_model(bundle, opt.output);
    print_weights(bundle, out);
    out << "saved " << opt.output.string() << "\n";
    return kExitOk;
  });
}

inline EvalReport evaluate_bundle(const ModelBundle& bundle, const std::vector<Review>& test) {
  if (test.empty()) throw Error(ErrorKind::EmptyCorpus, "test set is empty");
  std::vector<SentimentLabel> truth, predicted;
  for (const auto& r : test) {
    truth.push_back(r.label);
    predicted.push_back(predict(bundle.model, transform(r.text, bundle.vocab, bundle.features)).label);
  }
  return compute_report(confusion_matrix(truth, predicted), display_name(kind_of(bundle.model)));
}

inline std::string report_text(const EvalReport& r) {
  std::ostringstream os;
  os << r.model_name << "\n";
  os << "accuracy " << format_metric(r.accuracy) << "  macro F1 " << format_metric(r.macro_f1) << "  weighted F1 "
     << format_metric(r.weighted_f1) << "\n\n";
  os << "class      precision  recall     f1  support\n";
  for (std::size_t c = 0; c < r.per_class.size(); ++c) {
    const auto& pc = r.per_class[c];
    char line[128];
    std::snprintf(line, sizeof line, "%-9s %10.4f %7.4f %6.4f %8llu\n", r.cm.class_names[c].c_str(), pc.precision,
                  pc.recall, pc.f1, static_cast<unsigned long long>(pc.support));
    os << line;
  }
  os << "\nconfusion matrix (rows = true, cols = predicted)\n" << confusion_csv(r.cm);
  return os.str();
}

inline void write_report(const EvalReport& report, const fs::path& out_dir, nlohmann::json extra = nlohmann::json::object()) {
  fs::create_directories(out_dir);
  auto j = to_json(report);
  j.update(extra);
  write_file(out_dir / "report.json", j.dump(2) + "\n");
  write_file(out_dir / "confusion_matrix.csv", confusion_csv(report.cm));
  write_file(out_dir / "report.txt", report_text(report));
}

struct EvaluateOptions {
  fs::path model;
  fs::path test_csv;
  fs::path out_dir;
};

inline int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto bundle = load_model(opt.model);
    const auto clean = clean_corpus(load_csv(opt.test_csv));
    if (clean.dropped_count > 0) err << "warning: " << clean.dropped_count << " rows empty after cleaning were skipped\n";
    const auto report = evaluate_bundle(bundle, clean.reviews);
    write_report(report, opt.out_dir);
    out << report_text(report);
    return kExitOk;
  });
}

enum class OutputFormat { Text, Machine };

struct PredictOptions {
  fs::path model;
  std::optional<std::string> text;
  std::optional<fs::path> file;
  OutputFormat format = OutputFormat::Text;
};

inline std::string format_inference_text(const Inference& inf) {
  std::ostringstream os;
  os << class_name(inf.prediction.label) << "\t";
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%s=%.4f", c ? " " : "", std::string(kClassNames[c]).c_str(), inf.scores[c]);
    os << buf;
  }
  os << " (" << to_string(inf.score_kind) << ")";
  if (!inf.top_features.empty()) {
    os << "\ttop:";
    for (const auto& f : inf.top_features) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%+.4f", f.value);
      os << " " << f.term << "(" << buf << ")";
    }
  }
  if (inf.warning) os << "\tWARNING: " << *inf.warning;
  return os.str();
}

inline int cmd_predict(const PredictOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto bundle = load_model(opt.model);
    std::vector<std::string> inputs;
    if (opt.text) inputs.push_back(*opt.text);
    if (opt.file) {
      std::istringstream in(read_file(*opt.file));
      for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        inputs.push_back(line);
      }
    }
    if (inputs.empty()) throw Error(ErrorKind::InvalidArgument, "nothing to predict: pass --text or --file");
    for (const auto& raw : inputs) {
      const auto inf = infer(bundle, raw);
      if (opt.format == OutputFormat::Machine) {
        auto j = to_json(inf);
        j["input"] = raw;
        j["model"] = std::string(to_string(kind_of(bundle.model)));
        out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << "\n";
      } else {
        out << format_inference_text(inf) << "\n";
      }
    }
    return kExitOk;
  });
}

struct BenchmarkOptions {
  fs::path input;
  fs::path out_dir;
  std::uint64_t seed = 42;
  double test_fraction = 0.2;
  FeatureConfig features;
  TrainConfig train;
  double alpha = 1.0;
};

struct BenchmarkResult {
  std::vector<EvalReport> reports;
  std::string manifest_hash;
};

/// prepare → fit all three models on one split → evaluate → compare.
inline BenchmarkResult run_benchmark(const BenchmarkOptions& opt, std::ostream& out) {
  const auto data = prepare_data({opt.input, opt.out_dir / "data", opt.seed, opt.test_fraction});
  write_prepared(data, opt.out_dir / "data");
  print_summary(data.summary, out);

  BenchmarkResult result;
  result.manifest_hash = hex64(fnv1a64(data.manifest));
  for (ModelKind kind : kBenchmarkModels) {
    const auto bundle = fit_bundle(data.split.train, kind, opt.features, opt.train, opt.alpha, opt.seed);
    const std::string name(to_string(kind));
    fs::create_directories(opt.out_dir / "models");
    save_model(bundle, opt.out_dir / "models" / (name + ".json"));
    print_weights(bundle, out);
    auto report = evaluate_bundle(bundle, data.split.test);
    write_report(report, opt.out_dir / name, {{"split_manifest_fnv1a64", result.manifest_hash}});
    result.reports.push_back(std::move(report));
  }
  const auto table = format_comparison(result.reports);
  auto j = table.json;
  j["seed"] = opt.seed;
  j["split_manifest_fnv1a64"] = result.manifest_hash;
  write_file(opt.out_dir / "comparison.txt", table.text);
  write_file(opt.out_dir / "comparison.json", j.dump(2) + "\n");
  out << "\n" << table.text;
  return result;
}

inline int cmd_benchmark(const BenchmarkOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    run_benchmark(opt, out);
    return kExitOk;
  });
}

}  // namespace senti::app
