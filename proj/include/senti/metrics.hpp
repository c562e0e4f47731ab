#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "senti/error.hpp"
#include "senti/label.hpp"

namespace senti {

/// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  std::vector<std::vector<std::uint64_t>> m;
  std::vector<std::string> class_names;

  std::size_t classes() const { return m.size(); }

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& row : m)
      for (auto v : row) t += v;
    return t;
  }

  bool operator==(const ConfusionMatrix&) const = default;
};

inline std::vector<std::string> default_class_names(std::size_t C) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < C; ++c) {
    names.push_back(C == kNumClasses ? std::string(kClassNames[c]) : "class" + std::to_string(c));
  }
  return names;
}

inline ConfusionMatrix confusion_matrix(std::span<const std::size_t> y_true, std::span<const std::size_t> y_pred,
                                        std::size_t C = kNumClasses) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorKind::LengthMismatch,
                std::to_string(y_true.size()) + " true labels vs " + std::to_string(y_pred.size()) + " predictions");
  }
  if (y_true.empty()) throw Error(ErrorKind::LengthMismatch, "no samples to tally");
  ConfusionMatrix cm{std::vector<std::vector<std::uint64_t>>(C, std::vector<std::uint64_t>(C, 0)),
                     default_class_names(C)};
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] >= C || y_pred[i] >= C) {
      throw Error(ErrorKind::OrdinalOutOfRange, "label ordinal out of range at sample " + std::to_string(i));
    }
    ++cm.m[y_true[i]][y_pred[i]];
  }
  return cm;
}

inline ConfusionMatrix confusion_matrix(std::span<const SentimentLabel> y_true, std::span<const SentimentLabel> y_pred) {
  std::vector<std::size_t> t, p;
  for (auto l : y_true) t.push_back(ordinal(l));
  for (auto l : y_pred) p.push_back(ordinal(l));
  return confusion_matrix(t, p, kNumClasses);
}

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;

  bool operator==(const ClassMetrics&) const = default;
};

struct EvalReport {
  std::string model_name;
  double accuracy = 0.0;
  std::vector<ClassMetrics> per_class;
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  ConfusionMatrix cm;

  bool operator==(const EvalReport&) const = default;
};

/// Undefined ratios (0/0) are 0. Macro F1 averages over every class,
/// including classes with zero support.
inline EvalReport compute_report(const ConfusionMatrix& cm, std::string model_name = {}) {
  const std::size_t C = cm.classes();
  const std::uint64_t total = cm.total();
  if (C == 0 || total == 0) throw Error(ErrorKind::EmptyMatrix, "confusion matrix holds no samples");

  auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };

  EvalReport r;
  r.model_name = std::move(model_name);
  r.cm = cm;
  r.per_class.resize(C);
  std::uint64_t trace = 0;
  for (std::size_t c = 0; c < C; ++c) {
    std::uint64_t row = 0, col = 0;
    for (std::size_t k = 0; k < C; ++k) {
      row += cm.m[c][k];
      col += cm.m[k][c];
    }
    const double tp = static_cast<double>(cm.m[c][c]);
    trace += cm.m[c][c];
    auto& pc = r.per_class[c];
    pc.support = row;
    pc.precision = ratio(tp, static_cast<double>(col));
    pc.recall = ratio(tp, static_cast<double>(row));
    pc.f1 = ratio(2.0 * pc.precision * pc.recall, pc.precision + pc.recall);
  }
  double macro = 0.0, weighted = 0.0;
  for (const auto& pc : r.per_class) {
    macro += pc.f1;
    weighted += static_cast<double>(pc.support) * pc.f1;
  }
  r.accuracy = static_cast<double>(trace) / static_cast<double>(total);
  r.macro_f1 = macro / static_cast<double>(C);
  r.weighted_f1 = weighted / static_cast<double>(total);
  return r;
}

inline nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json per_class = nlohmann::json::array();
  for (std::size_t c = 0; c < r.per_class.size(); ++c) {
    const auto& pc = r.per_class[c];
    per_class.push_back({{"class", r.cm.class_names.at(c)},
                         {"precision", pc.precision},
                         {"recall", pc.recall},
                         {"f1", pc.f1},
                         {"support", pc.support}});
  }
  return {{"model_name", r.model_name},
          {"accuracy", r.accuracy},
          {"macro_f1", r.macro_f1},
          {"weighted_f1", r.weighted_f1},
          {"per_class", per_class},
          {"confusion_matrix", {{"class_names", r.cm.class_names}, {"rows_true_cols_pred", r.cm.m}}}};
}

inline EvalReport report_from_json(const nlohmann::json& j) {
  EvalReport r;
  r.model_name = j.at("model_name").get<std::string>();
  r.accuracy = j.at("accuracy").get<double>();
  r.macro_f1 = j.at("macro_f1").get<double>();
  r.weighted_f1 = j.at("weighted_f1").get<double>();
  for (const auto& pc : j.at("per_class")) {
    r.per_class.push_back({pc.at("precision").get<double>(), pc.at("recall").get<double>(), pc.at("f1").get<double>(),
                           pc.at("support").get<std::uint64_t>()});
  }
  const auto& cm = j.at("confusion_matrix");
  r.cm.class_names = cm.at("class_names").get<std::vector<std::string>>();
  r.cm.m = cm.at("rows_true_cols_pred").get<std::vector<std::vector<std::uint64_t>>>();
  return r;
}

/// Header row of class names, then one row per true class.
inline std::string confusion_csv(const ConfusionMatrix& cm) {
  std::string out = "true\\pred";
  for (const auto& name : cm.class_names) out += "," + name;
  out += "\n";
  for (std::size_t i = 0; i < cm.classes(); ++i) {
    out += cm.class_names.at(i);
    for (auto v : cm.m[i]) out += "," + std::to_string(v);
    out += "\n";
  }
  return out;
}

inline std::string format_metric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

struct Comparison {
  std::string text;
  nlohmann::json json;
};

/// One row per report, in input order.
inline Comparison format_comparison(std::span<const EvalReport> reports) {
  if (reports.empty()) throw Error(ErrorKind::InvalidArgument, "nothing to compare");
  const std::string model_header = "Model";
  const std::array<std::string, 3> headers = {"Accuracy", "Macro F1-score", "Weighted F1-score"};
  std::size_t name_width = model_header.size();
  for (const auto& r : reports) name_width = std::max(name_width, r.model_name.size());

  auto pad_right = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
  auto pad_left = [](const std::string& s, std::size_t w) { return std::string(w - std::min(w, s.size()), ' ') + s; };

  Comparison out;
  out.text = pad_right(model_header, name_width);
  for (const auto& h : headers) out.text += "  " + h;
  out.text += "\n" + std::string(name_width, '-');
  for (const auto& h : headers) out.text += "  " + std::string(h.size(), '-');
  out.text += "\n";

  out.json = {{"columns", {"model", "accuracy", "macro_f1", "weighted_f1"}}, {"rows", nlohmann::json::array()}};
  for (const auto& r : reports) {
    const std::array<double, 3> values = {r.accuracy, r.macro_f1, r.weighted_f1};
    out.text += pad_right(r.model_name, name_width);
    for (std::size_t k = 0; k < 3; ++k) out.text += "  " + pad_left(format_metric(values[k]), headers[k].size());
    out.text += "\n";
    out.json["rows"].push_back(
        {{"model", r.model_name}, {"accuracy", r.accuracy}, {"macro_f1", r.macro_f1}, {"weighted_f1", r.weighted_f1}});
  }
  return out;
}

}  // namespace senti
