#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "senti/corpus.hpp"
#include "test_util.hpp"

using namespace senti;

namespace {

std::vector<RawRecord> parse(const std::string& csv) { return parse_records(csv); }

ErrorKind kind_of_failure(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::InvalidArgument;
}

std::vector<Review> reviews_with_labels(const std::vector<int>& ordinals) {
  std::vector<Review> out;
  for (std::size_t i = 0; i < ordinals.size(); ++i) {
    out.push_back({"doc " + std::to_string(i), static_cast<SentimentLabel>(ordinals[i])});
  }
  return out;
}

}  // namespace

TEST(LoadCsv, SingleQuotedRow) {
  auto records = parse("review_text,label\n\"bagus\",positif\n");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0], (RawRecord{"bagus", "positif"}));
}

TEST(LoadCsv, ColumnsResolvedByName) {
  auto records = parse("label,review_text,extra\nnetral,\"biasa, saja\",zzz\r\nneg,\"kata \"\"palsu\"\"\nbaris dua\",1");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0], (RawRecord{"biasa, saja", "netral"}));
  EXPECT_EQ(records[1], (RawRecord{"kata \"palsu\"\nbaris dua", "neg"}));
}

TEST(LoadCsv, MissingColumnNamesReviewText) {
  try {
    parse("text,label\nbagus,positif\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingColumn);
    EXPECT_NE(std::string(e.what()).find("review_text"), std::string::npos);
  }
}

TEST(LoadCsv, UnbalancedQuoteReportsRow) {
  try {
    parse("review_text,label\nok,positif\n\"never closed,netral\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedRow);
    EXPECT_EQ(e.row(), 1u);
  }
}

TEST(LoadCsv, ShortRowIsMalformed) {
  EXPECT_EQ(kind_of_failure([] { parse("review_text,label\nonly-one-field\n"); }), ErrorKind::MalformedRow);
}

TEST(LoadCsv, MissingFileIsIoError) {
  EXPECT_EQ(kind_of_failure([] { load_csv("/nonexistent/file.csv"); }), ErrorKind::IoError);
}

TEST(PreprocessText, WorkedExample) {
  EXPECT_EQ(preprocess_text("Barang BAGUS!!! cek https://toko.id/x 👍👍"), "barang bagus cek");
}

TEST(PreprocessText, FixedPoints) {
  EXPECT_EQ(preprocess_text(""), "");
  EXPECT_EQ(preprocess_text("sudah bersih"), "sudah bersih");
}

TEST(PreprocessText, PunctuationSeparatesWords) {
  EXPECT_EQ(preprocess_text("bagus!murah"), "bagus murah");
  EXPECT_EQ(preprocess_text("  2x  100rb\t\n"), "2x 100rb");
  EXPECT_EQ(preprocess_text("lihat www.toko.id/p?x=1 dan HTTP://A.B/c ya"), "lihat dan ya");
  EXPECT_EQ(preprocess_text("Ünïcödé ÇA"), "ünïcödé ça");
  EXPECT_EQ(preprocess_text("!!!"), "");
}

TEST(PreprocessText, NonAsciiDigitsAreNotKept) {
  // Only ASCII digits survive; full-width digits are symbols here.
  EXPECT_EQ(preprocess_text("harga １２３ 123"), "harga 123");
}

TEST(PreprocessText, IdempotentAndWellFormedOnRandomInput) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::string raw = test::random_text(rng);
    const std::string once = preprocess_text(raw);
    ASSERT_EQ(preprocess_text(once), once) << "input: " << raw;
    ASSERT_EQ(once.find("  "), std::string::npos);
    if (!once.empty()) {
      ASSERT_NE(once.front(), ' ');
      ASSERT_NE(once.back(), ' ');
    }
    for (char32_t c : unicode::decode(once)) {
      ASSERT_TRUE(c == U' ' || unicode::is_letter(c) || unicode::is_ascii_digit(c)) << "input: " << raw;
    }
  }
}

TEST(MapLabel, DefaultMap) {
  EXPECT_EQ(map_label("positif"), SentimentLabel::Positif);
  EXPECT_EQ(map_label("Negative"), SentimentLabel::Negatif);
  EXPECT_EQ(map_label("NEU"), SentimentLabel::Netral);
  EXPECT_EQ(kind_of_failure([] { map_label("5 stars"); }), ErrorKind::UnknownLabel);
}

TEST(MapLabel, CustomMap) {
  LabelMap map{{"1", SentimentLabel::Negatif}, {"Bintang Lima", SentimentLabel::Positif}};
  EXPECT_EQ(map_label("bintang lima", map), SentimentLabel::Positif);
  EXPECT_EQ(kind_of_failure([&] { map_label("positif", map); }), ErrorKind::UnknownLabel);
}

TEST(CleanCorpus, DropsEmptyRecords) {
  auto result = clean_corpus({{"!!!", "netral"}, {"ok ok", "positif"}});
  ASSERT_EQ(result.reviews.size(), 1u);
  EXPECT_EQ(result.reviews[0], (Review{"ok ok", SentimentLabel::Positif}));
  EXPECT_EQ(result.dropped_count, 1u);
  EXPECT_EQ(result.source_rows, std::vector<std::size_t>{1});
}

TEST(CleanCorpus, EmptyCorpus) {
  auto result = clean_corpus({});
  EXPECT_TRUE(result.reviews.empty());
  EXPECT_EQ(result.dropped_count, 0u);
}

TEST(CleanCorpus, UnknownLabelCarriesRow) {
  try {
    clean_corpus({{"bagus", "positif"}, {"bagus", "positip"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownLabel);
    EXPECT_EQ(e.row(), 1u);
    EXPECT_NE(std::string(e.what()).find("positip"), std::string::npos);
  }
}

TEST(CleanCorpus, NeverEmitsEmptyText) {
  std::mt19937_64 rng(7);
  std::vector<RawRecord> records;
  for (int i = 0; i < 2000; ++i) records.push_back({test::random_text(rng, 4), "pos"});
  const auto result = clean_corpus(records);
  EXPECT_EQ(result.reviews.size() + result.dropped_count, records.size());
  for (const auto& r : result.reviews) EXPECT_FALSE(r.text.empty());
}

TEST(SplitMix64, ReferenceOutputs) {
  SplitMix64 zero(0);
  EXPECT_EQ(zero.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(zero.next(), 0x6e789e6aa1b965f4ULL);
  SplitMix64 rng(42);
  EXPECT_EQ(rng.next(), 0xbdd732262feb6e95ULL);
  EXPECT_EQ(rng.next(), 0x28efe333b266f103ULL);
}

TEST(StratifiedSplit, WorkedExampleCountsAndMembership) {
  // 6 Positif, 3 Netral, 1 Negatif.
  const auto reviews = reviews_with_labels({2, 1, 2, 0, 2, 1, 2, 2, 1, 2});
  const auto split = stratified_split(reviews, 0.2, 42);
  ASSERT_EQ(split.test.size(), 2u);
  // Membership frozen from the reference pipeline (tests/oracle/reference.py).
  EXPECT_EQ(split.test_indices, (std::vector<std::size_t>{1, 9}));
  EXPECT_EQ(split.train_indices, (std::vector<std::size_t>{0, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(split.test[0].label, SentimentLabel::Netral);
  EXPECT_EQ(split.test[1].label, SentimentLabel::Positif);
}

TEST(StratifiedSplit, SingleClassOfFive) {
  const auto split = stratified_split(reviews_with_labels({1, 1, 1, 1, 1}), 0.2, 9);
  EXPECT_EQ(split.test.size(), 1u);
  EXPECT_EQ(split.train.size(), 4u);
}

TEST(StratifiedSplit, Errors) {
  EXPECT_EQ(kind_of_failure([] { stratified_split({}, 0.2, 1); }), ErrorKind::EmptyCorpus);
  EXPECT_EQ(kind_of_failure([] { stratified_split(reviews_with_labels({0}), 1.0, 1); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of_failure([] { stratified_split(reviews_with_labels({0}), 0.0, 1); }), ErrorKind::InvalidArgument);
}

TEST(StratifiedSplit, PartitionPropertyOnRandomCorpora) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> label(0, 2);
  std::uniform_int_distribution<int> size(1, 80);
  std::uniform_real_distribution<double> frac(0.01, 0.99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> ordinals(static_cast<std::size_t>(size(rng)));
    for (auto& o : ordinals) o = label(rng);
    const auto reviews = reviews_with_labels(ordinals);
    const double f = frac(rng);
    const auto split = stratified_split(reviews, f, rng());

    std::vector<std::size_t> all = split.train_indices;
    all.insert(all.end(), split.test_indices.begin(), split.test_indices.end());
    std::sort(all.begin(), all.end());
    ASSERT_EQ(all.size(), reviews.size());
    for (std::size_t i = 0; i < all.size(); ++i) ASSERT_EQ(all[i], i);
    ASSERT_TRUE(std::is_sorted(split.test_indices.begin(), split.test_indices.end()));

    for (std::size_t c = 0; c < kNumClasses; ++c) {
      const auto n_c = static_cast<std::size_t>(std::count(ordinals.begin(), ordinals.end(), static_cast<int>(c)));
      std::size_t in_test = 0;
      for (const auto& r : split.test) in_test += ordinal(r.label) == c;
      ASSERT_EQ(in_test, stratified_test_count(n_c, f));
      if (n_c > 0) {
        ASSERT_LE(std::abs(static_cast<double>(in_test) / static_cast<double>(n_c) - f), 1.0 / static_cast<double>(n_c));
      }
    }
  }
}

TEST(StratifiedSplit, DeterministicAndSeedSensitive) {
  std::vector<int> ordinals;
  for (int i = 0; i < 100; ++i) ordinals.push_back(i % 3);
  const auto reviews = reviews_with_labels(ordinals);
  EXPECT_EQ(stratified_split(reviews, 0.2, 1).test_indices, stratified_split(reviews, 0.2, 1).test_indices);
  EXPECT_NE(stratified_split(reviews, 0.2, 1).test_indices, stratified_split(reviews, 0.2, 2).test_indices);
  // Frozen from the reference pipeline.
  EXPECT_EQ(stratified_split(reviews, 0.2, 1).test_indices,
            (std::vector<std::size_t>{6, 14, 16, 18, 21, 33, 38, 40, 45, 49, 52, 58, 59, 62, 68, 79, 84, 86, 93, 95, 97}));
}

TEST(StratifiedSplit, ManifestListsEveryIndex) {
  const auto split = stratified_split(reviews_with_labels({2, 1, 2, 0, 2, 1, 2, 2, 1, 2}), 0.2, 42);
  EXPECT_EQ(split_manifest(split),
            "0\ttrain\n1\ttest\n2\ttrain\n3\ttrain\n4\ttrain\n5\ttrain\n6\ttrain\n7\ttrain\n8\ttrain\n9\ttest\n");
  const std::vector<std::size_t> rows = {10, 11, 12, 13, 14, 15, 16, 17, 18, 19};
  EXPECT_EQ(split_manifest(split, &rows).substr(0, 9), "10\ttrain\n");
}
