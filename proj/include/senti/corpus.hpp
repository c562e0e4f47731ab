#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "senti/csv.hpp"
#include "senti/error.hpp"
#include "senti/label.hpp"
#include "senti/random.hpp"
#include "senti/unicode.hpp"

namespace senti {

struct RawRecord {
  std::string text;
  std::string label_raw;

  bool operator==(const RawRecord&) const = default;
};

struct Review {
  std::string text;  // normalized, non-empty
  SentimentLabel label;

  bool operator==(const Review&) const = default;
};

inline constexpr std::string_view kTextColumn = "review_text";
inline constexpr std::string_view kLabelColumn = "label";

/// Parses CSV content with a header naming `review_text` and `label`
/// (any order, extra columns ignored).
inline std::vector<RawRecord> parse_records(std::string_view content) {
  std::vector<csv::Row> rows;
  try {
    rows = csv::parse(content);
  } catch (const Error& e) {
    // Re-index from CSV records to data rows.
    const std::size_t record = e.row().value_or(0);
    const std::size_t data_row = record == 0 ? 0 : record - 1;
    throw Error(ErrorKind::MalformedRow,
                record == 0 ? "malformed header" : "malformed data row " + std::to_string(data_row),
                data_row);
  }
  if (rows.empty()) throw Error(ErrorKind::MissingColumn, "missing header row; expected column 'review_text'");

  const auto& header = rows.front();
  auto column = [&](std::string_view name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw Error(ErrorKind::MissingColumn, "header lacks column '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t text_col = column(kTextColumn);
  const std::size_t label_col = column(kLabelColumn);
  const std::size_t needed = std::max(text_col, label_col) + 1;

  std::vector<RawRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    auto& row = rows[r];
    if (row.size() < needed) {
      throw Error(ErrorKind::MalformedRow,
                  "data row " + std::to_string(r - 1) + " has " + std::to_string(row.size()) +
                      " fields, expected at least " + std::to_string(needed),
                  r - 1);
    }
    records.push_back({std::move(row[text_col]), std::move(row[label_col])});
  }
  return records;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

inline std::vector<RawRecord> load_csv(const std::filesystem::path& path) {
  return parse_records(read_file(path));
}

namespace detail {

inline bool starts_with(std::u32string_view s, std::size_t pos, std::u32string_view prefix) {
  return s.substr(pos, prefix.size()) == prefix;
}

}  // namespace detail

/// Lowercase, strip URLs, replace everything that is not a letter or ASCII
/// digit by a space, collapse spaces, trim. Total and idempotent.
inline std::string preprocess_text(std::string_view raw) {
  std::u32string text = unicode::decode(raw);
  for (char32_t& c : text) c = unicode::fold_case(c);

  std::u32string kept;
  kept.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (detail::starts_with(text, i, U"http://") || detail::starts_with(text, i, U"https://") ||
        detail::starts_with(text, i, U"www.")) {
      while (i < text.size() && !unicode::is_space(text[i])) ++i;
      continue;
    }
    kept.push_back(text[i++]);
  }

  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char32_t c : kept) {
    if (unicode::is_letter(c) || unicode::is_ascii_digit(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      unicode::append(out, c);
    } else {
      pending_space = true;
    }
  }
  return out;
}

struct CleanResult {
  std::vector<Review> reviews;
  std::size_t dropped_count = 0;
  /// Data-row index of each surviving review in the input.
  std::vector<std::size_t> source_rows;
};

inline CleanResult clean_corpus(const std::vector<RawRecord>& records,
                                const LabelMap& map = LabelMap::defaults()) {
  CleanResult result;
  for (std::size_t row = 0; row < records.size(); ++row) {
    const auto label = map.find(records[row].label_raw);
    if (!label) {
      throw Error(ErrorKind::UnknownLabel,
                  "unknown label token '" + records[row].label_raw + "' at row " + std::to_string(row),
                  row);
    }
    std::string text = preprocess_text(records[row].text);
    if (text.empty()) {
      ++result.dropped_count;
      continue;
    }
    result.reviews.push_back({std::move(text), *label});
    result.source_rows.push_back(row);
  }
  return result;
}

struct DatasetSplit {
  std::vector<Review> train;
  std::vector<Review> test;
  /// Corpus indices of each side, ascending.
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::uint64_t seed = 0;
  double test_fraction = 0.0;
};

/// round-half-up(n × fraction)
inline std::size_t stratified_test_count(std::size_t n, double fraction) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction + 0.5));
}

inline DatasetSplit stratified_split(const std::vector<Review>& reviews, double test_fraction,
                                     std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "test_fraction must lie in (0, 1)");
  }
  if (reviews.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot split an empty corpus");

  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < reviews.size(); ++i) by_class[ordinal(reviews[i].label)].push_back(i);

  std::vector<bool> is_test(reviews.size(), false);
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    auto& indices = by_class[c];
    SplitMix64 rng(seed ^ static_cast<std::uint64_t>(c));
    fisher_yates(std::span<std::size_t>(indices), rng);
    const std::size_t k = std::min(indices.size(), stratified_test_count(indices.size(), test_fraction));
    for (std::size_t j = 0; j < k; ++j) is_test[indices[j]] = true;
  }

  DatasetSplit split;
  split.seed = seed;
  split.test_fraction = test_fraction;
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    if (is_test[i]) {
      split.test.push_back(reviews[i]);
      split.test_indices.push_back(i);
    } else {
      split.train.push_back(reviews[i]);
      split.train_indices.push_back(i);
    }
  }
  return split;
}

/// `index<TAB>train|test`, one line per corpus index. When `source_rows` is
/// given, indices are translated to input data rows.
inline std::string split_manifest(const DatasetSplit& split,
                                  const std::vector<std::size_t>* source_rows = nullptr) {
  const std::size_t n = split.train_indices.size() + split.test_indices.size();
  std::vector<bool> is_test(n, false);
  for (std::size_t i : split.test_indices) is_test[i] = true;
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t index = source_rows ? (*source_rows)[i] : i;
    out += std::to_string(index);
    out += is_test[i] ? "\ttest\n" : "\ttrain\n";
  }
  return out;
}

/// Cleaned reviews as a `review_text,label` CSV with canonical label names.
inline std::string reviews_to_csv(const std::vector<Review>& reviews) {
  std::string out = csv::format_row({std::string(kTextColumn), std::string(kLabelColumn)});
  for (const auto& r : reviews) out += csv::format_row({r.text, std::string(class_name(r.label))});
  return out;
}

}  // namespace senti
