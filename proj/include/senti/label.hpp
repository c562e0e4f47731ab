#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "senti/error.hpp"
#include "senti/unicode.hpp"

namespace senti {

/// Ordinal codes are part of the on-disk format; do not renumber.
enum class SentimentLabel : std::uint8_t { Negatif = 0, Netral = 1, Positif = 2 };

inline constexpr std::size_t kNumClasses = 3;

inline constexpr std::array<SentimentLabel, kNumClasses> kAllLabels = {
    SentimentLabel::Negatif, SentimentLabel::Netral, SentimentLabel::Positif};

inline constexpr std::array<std::string_view, kNumClasses> kClassNames = {"negatif", "netral",
                                                                          "positif"};

constexpr std::size_t ordinal(SentimentLabel label) { return static_cast<std::size_t>(label); }

inline SentimentLabel label_from_ordinal(std::size_t ordinal) {
  if (ordinal >= kNumClasses) {
    throw Error(ErrorKind::OrdinalOutOfRange, "class ordinal " + std::to_string(ordinal));
  }
  return static_cast<SentimentLabel>(ordinal);
}

constexpr std::string_view class_name(SentimentLabel label) { return kClassNames[ordinal(label)]; }

/// Case-insensitive source-token → label table.
class LabelMap {
 public:
  LabelMap() = default;
  LabelMap(std::initializer_list<std::pair<std::string_view, SentimentLabel>> entries) {
    for (const auto& [token, label] : entries) add(token, label);
  }

  static LabelMap defaults() {
    return {{"positif", SentimentLabel::Positif}, {"positive", SentimentLabel::Positif},
            {"pos", SentimentLabel::Positif},     {"netral", SentimentLabel::Netral},
            {"neutral", SentimentLabel::Netral},  {"neu", SentimentLabel::Netral},
            {"negatif", SentimentLabel::Negatif}, {"negative", SentimentLabel::Negatif},
            {"neg", SentimentLabel::Negatif}};
  }

  void add(std::string_view token, SentimentLabel label) { entries_[unicode::fold_case(token)] = label; }

  std::optional<SentimentLabel> find(std::string_view token) const {
    auto it = entries_.find(unicode::fold_case(token));
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::string, SentimentLabel>& entries() const { return entries_; }

 private:
  std::map<std::string, SentimentLabel> entries_;
};

inline SentimentLabel map_label(std::string_view raw, const LabelMap& map = LabelMap::defaults()) {
  if (auto label = map.find(raw)) return *label;
  throw Error(ErrorKind::UnknownLabel, "unknown label token '" + std::string(raw) + "'");
}

}  // namespace senti
