#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "senti/corpus.hpp"
#include "senti/error.hpp"
#include "senti/sparse.hpp"
#include "senti/unicode.hpp"

namespace senti {

/// Defaults: uni+bigrams, 50k feature cap, min_df 2, sublinear tf.
struct FeatureConfig {
  std::size_t ngram_min = 1;
  std::size_t ngram_max = 2;
  std::size_t max_features = 50000;
  std::size_t min_df = 2;
  bool sublinear_tf = true;

  void validate() const {
    if (ngram_min < 1 || ngram_max < ngram_min) {
      throw Error(ErrorKind::InvalidArgument, "ngram range must satisfy 1 <= min <= max");
    }
    if (max_features < 1) throw Error(ErrorKind::InvalidArgument, "max_features must be >= 1");
    if (min_df < 1) throw Error(ErrorKind::InvalidArgument, "min_df must be >= 1");
  }

  bool operator==(const FeatureConfig&) const = default;
};

/// Smoothed inverse document frequency, ln((1+N)/(1+df)) + 1.
inline double smoothed_idf(std::uint64_t n_docs, std::uint64_t doc_freq) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(doc_freq))) + 1.0;
}

/// Fitted feature space. Column indices follow lexicographic (byte-wise)
/// term order. Immutable once built.
class Vocabulary {
 public:
  struct Entry {
    std::string term;
    std::uint64_t doc_freq = 0;
    double idf = 0.0;

    bool operator==(const Entry&) const = default;
  };

  Vocabulary() = default;

  /// `entries` must be sorted strictly ascending by term.
  Vocabulary(std::vector<Entry> entries, std::uint64_t n_docs)
      : entries_(std::move(entries)), n_docs_(n_docs) {
    index_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      if (i > 0 && !(entries_[i - 1].term < e.term)) {
        throw Error(ErrorKind::CorruptEnvelope, "vocabulary terms not strictly ascending at '" + e.term + "'");
      }
      if (!std::isfinite(e.idf) || e.idf <= 0.0) {
        throw Error(ErrorKind::CorruptEnvelope, "non-positive idf for '" + e.term + "'");
      }
      index_.emplace(e.term, static_cast<std::uint32_t>(i));
    }
  }

  std::size_t size() const noexcept { return entries_.size(); }
  std::uint64_t n_docs() const noexcept { return n_docs_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const std::string& term(std::size_t i) const { return entries_[i].term; }

  std::optional<std::uint32_t> find(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const Vocabulary& other) const {
    return n_docs_ == other.n_docs_ && entries_ == other.entries_;
  }

 private:
  std::vector<Entry> entries_;
  std::uint64_t n_docs_ = 0;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Maximal runs of letters/digits, keeping runs of two or more characters.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t current_len = 0;
  auto flush = [&] {
    if (current_len >= 2) tokens.push_back(std::move(current));
    current.clear();
    current_len = 0;
  };
  for (char32_t c : unicode::decode(text)) {
    if (unicode::is_letter(c) || unicode::is_ascii_digit(c)) {
      unicode::append(current, c);
      ++current_len;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

/// Contiguous n-grams joined by one space, all n = nmin first, then nmin+1, …
inline std::vector<std::string> extract_ngrams(const std::vector<std::string>& tokens, std::size_t nmin,
                                               std::size_t nmax) {
  std::vector<std::string> out;
  for (std::size_t n = std::max<std::size_t>(nmin, 1); n <= nmax; ++n) {
    for (std::size_t pos = 0; pos + n <= tokens.size(); ++pos) {
      std::string term = tokens[pos];
      for (std::size_t k = 1; k < n; ++k) {
        term.push_back(' ');
        term += tokens[pos + k];
      }
      out.push_back(std::move(term));
    }
  }
  return out;
}

inline std::vector<std::string> analyze(std::string_view text, const FeatureConfig& config) {
  return extract_ngrams(tokenize(text), config.ngram_min, config.ngram_max);
}

inline Vocabulary fit_vocabulary(const std::vector<std::string>& corpus, const FeatureConfig& config = {}) {
  config.validate();
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot fit a vocabulary on zero documents");

  struct Stats {
    std::uint64_t doc_freq = 0;
    std::uint64_t total = 0;
    std::size_t last_doc = static_cast<std::size_t>(-1);
  };
  std::unordered_map<std::string, Stats> stats;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    for (auto& term : analyze(corpus[d], config)) {
      auto& s = stats[std::move(term)];
      ++s.total;
      if (s.last_doc != d) {
        s.last_doc = d;
        ++s.doc_freq;
      }
    }
  }

  struct Candidate {
    const std::string* term;
    std::uint64_t doc_freq;
    std::uint64_t total;
  };
  std::vector<Candidate> kept;
  for (const auto& [term, s] : stats) {
    if (s.doc_freq >= config.min_df) kept.push_back({&term, s.doc_freq, s.total});
  }
  if (kept.empty()) throw Error(ErrorKind::EmptyVocabulary, "every term was filtered by min_df");

  if (kept.size() > config.max_features) {
    auto by_frequency = [](const Candidate& a, const Candidate& b) {
      if (a.total != b.total) return a.total > b.total;
      return *a.term < *b.term;
    };
    std::nth_element(kept.begin(), kept.begin() + static_cast<std::ptrdiff_t>(config.max_features),
                     kept.end(), by_frequency);
    kept.resize(config.max_features);
  }
  std::sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) { return *a.term < *b.term; });

  std::vector<Vocabulary::Entry> entries;
  entries.reserve(kept.size());
  for (const auto& c : kept) entries.push_back({*c.term, c.doc_freq, smoothed_idf(corpus.size(), c.doc_freq)});
  return Vocabulary(std::move(entries), corpus.size());
}

inline Vocabulary fit_vocabulary(const std::vector<Review>& reviews, const FeatureConfig& config = {}) {
  std::vector<std::string> texts;
  texts.reserve(reviews.size());
  for (const auto& r : reviews) texts.push_back(r.text);
  return fit_vocabulary(texts, config);
}

/// Sublinear-tf × idf, L2-normalized. Out-of-vocabulary terms are ignored.
inline SparseVector transform(std::string_view text, const Vocabulary& vocab, const FeatureConfig& config = {}) {
  std::vector<std::uint32_t> hits;
  for (const auto& term : analyze(text, config)) {
    if (auto index = vocab.find(term)) hits.push_back(*index);
  }
  std::sort(hits.begin(), hits.end());

  SparseVector x;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    const double tf = static_cast<double>(j - i);
    const double weight = config.sublinear_tf ? 1.0 + std::log(tf) : tf;
    x.indices.push_back(hits[i]);
    x.values.push_back(weight * vocab[hits[i]].idf);
    i = j;
  }
  const double norm = x.norm();
  if (norm > 0.0) {
    for (double& v : x.values) v /= norm;
  }
  return x;
}

inline std::vector<SparseVector> transform_all(const std::vector<Review>& reviews, const Vocabulary& vocab,
                                               const FeatureConfig& config = {}) {
  std::vector<SparseVector> out;
  out.reserve(reviews.size());
  for (const auto& r : reviews) out.push_back(transform(r.text, vocab, config));
  return out;
}

}  // namespace senti
