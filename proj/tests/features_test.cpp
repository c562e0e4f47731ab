#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "feature_oracle.hpp"
#include "senti/features.hpp"

using namespace senti;

namespace {

FeatureConfig unigram_config(std::size_t min_df) {
  FeatureConfig c;
  c.ngram_max = 1;
  c.min_df = min_df;
  return c;
}

FeatureConfig to_config(const test::OracleConfig& o) {
  FeatureConfig c;
  c.ngram_min = o.ngram_min;
  c.ngram_max = o.ngram_max;
  c.max_features = o.max_features;
  c.min_df = o.min_df;
  c.sublinear_tf = o.sublinear;
  return c;
}

}  // namespace

TEST(FeatureConfig, DefaultsMatchBaselineSetup) {
  FeatureConfig c;
  EXPECT_EQ(c.ngram_min, 1u);
  EXPECT_EQ(c.ngram_max, 2u);
  EXPECT_EQ(c.max_features, 50000u);
  EXPECT_EQ(c.min_df, 2u);
  EXPECT_TRUE(c.sublinear_tf);
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("barang bagus murah"), (std::vector<std::string>{"barang", "bagus", "murah"}));
  EXPECT_EQ(tokenize("ok x di toko"), (std::vector<std::string>{"ok", "di", "toko"}));
  EXPECT_TRUE(tokenize("").empty());
  // Length counts characters, not bytes.
  EXPECT_EQ(tokenize("é ça 日"), (std::vector<std::string>{"ça"}));
}

TEST(ExtractNgrams, Examples) {
  EXPECT_EQ(extract_ngrams({"barang", "bagus"}, 1, 2), (std::vector<std::string>{"barang", "bagus", "barang bagus"}));
  EXPECT_EQ(extract_ngrams({"a1", "b2", "c3"}, 2, 2), (std::vector<std::string>{"a1 b2", "b2 c3"}));
  EXPECT_TRUE(extract_ngrams({}, 1, 2).empty());
  EXPECT_TRUE(extract_ngrams({"solo"}, 2, 3).empty());
}

TEST(FitVocabulary, HandComputedIdf) {
  const auto vocab = fit_vocabulary(std::vector<std::string>{"bagus bagus", "bagus jelek", "jelek"}, unigram_config(1));
  ASSERT_EQ(vocab.size(), 2u);
  EXPECT_EQ(vocab.term(0), "bagus");
  EXPECT_EQ(vocab.term(1), "jelek");
  EXPECT_EQ(vocab[0].doc_freq, 2u);
  EXPECT_EQ(vocab[1].doc_freq, 2u);
  EXPECT_NEAR(vocab[0].idf, std::log(4.0 / 3.0) + 1.0, 1e-15);
  EXPECT_NEAR(vocab[0].idf, 1.2877, 5e-5);
  EXPECT_EQ(vocab.n_docs(), 3u);
}

TEST(FitVocabulary, Errors) {
  try {
    fit_vocabulary(std::vector<std::string>{"bagus bagus", "bagus jelek", "jelek"}, unigram_config(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyVocabulary);
  }
  try {
    fit_vocabulary(std::vector<std::string>{}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyCorpus);
  }
}

TEST(FitVocabulary, CapKeepsMostFrequentWithLexicographicTies) {
  // Totals: aa 4, bb 3, cc 3, dd 2, ee 2 (all df >= 1). Cap 3 keeps aa, then bb/cc.
  const std::vector<std::string> docs = {"aa aa bb cc", "aa bb cc dd", "aa bb cc ee", "dd ee"};
  auto config = unigram_config(1);
  config.max_features = 3;
  const auto vocab = fit_vocabulary(docs, config);
  const auto oracle = test::oracle_tfidf(docs, {1, 1, 3, 1, true});
  ASSERT_EQ(vocab.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(vocab.term(i), oracle.terms[i]);
  EXPECT_EQ(oracle.terms, (std::vector<std::string>{"aa", "bb", "cc"}));

  // Tie at the boundary: dd and ee both total 2; cap 4 keeps dd.
  config.max_features = 4;
  const auto vocab4 = fit_vocabulary(docs, config);
  EXPECT_EQ(vocab4.term(3), "dd");
}

TEST(Transform, Examples) {
  const auto vocab = fit_vocabulary(std::vector<std::string>{"bagus bagus", "bagus jelek", "jelek"}, unigram_config(1));
  const auto config = unigram_config(1);

  const auto one = transform("bagus bagus", vocab, config);
  ASSERT_EQ(one.nnz(), 1u);
  EXPECT_EQ(one.indices[0], 0u);
  EXPECT_DOUBLE_EQ(one.values[0], 1.0);

  const auto two = transform("bagus jelek", vocab, config);
  ASSERT_EQ(two.nnz(), 2u);
  EXPECT_NEAR(two.values[0], 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(two.values[1], 0.70711, 5e-6);

  EXPECT_TRUE(transform("zzz", vocab, config).empty());
}

TEST(Transform, MatchesDenseOracleOnRandomCorpora) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto rc = test::random_corpus(rng);
    const auto oracle = test::oracle_tfidf(rc.docs, rc.config);
    const auto config = to_config(rc.config);
    if (oracle.empty_vocabulary) {
      EXPECT_THROW(fit_vocabulary(rc.docs, config), Error);
      continue;
    }
    const auto vocab = fit_vocabulary(rc.docs, config);
    ASSERT_EQ(vocab.size(), oracle.terms.size());
    for (std::size_t j = 0; j < vocab.size(); ++j) {
      ASSERT_EQ(vocab.term(j), oracle.terms[j]);
      ASSERT_EQ(static_cast<double>(vocab[j].doc_freq), oracle.df.at(oracle.terms[j]));
      ASSERT_NEAR(vocab[j].idf, oracle.idf.at(oracle.terms[j]), 1e-12);
    }
    for (std::size_t d = 0; d < rc.docs.size(); ++d) {
      const auto x = transform(rc.docs[d], vocab, config);
      std::vector<double> dense(vocab.size(), 0.0);
      for (std::size_t k = 0; k < x.nnz(); ++k) {
        ASSERT_NE(x.values[k], 0.0);
        if (k) {
          ASSERT_LT(x.indices[k - 1], x.indices[k]);
        }
        dense[x.indices[k]] = x.values[k];
      }
      for (std::size_t j = 0; j < dense.size(); ++j) ASSERT_NEAR(dense[j], oracle.rows[d][j], 1e-9);
      if (!x.empty()) {
        ASSERT_NEAR(x.norm(), 1.0, 1e-9);
      }
    }
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(Vocabulary, IdfNeverIncreasesWhenAddingADocumentWithTheTerm) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto rc = test::random_corpus(rng);
    auto config = to_config(rc.config);
    config.min_df = 1;
    config.max_features = 50000;
    Vocabulary before;
    try {
      before = fit_vocabulary(rc.docs, config);
    } catch (const Error&) {
      continue;
    }
    const std::string term = before.term(rng() % before.size());
    auto docs = rc.docs;
    docs.push_back(term);
    const auto after = fit_vocabulary(docs, config);
    const auto index = after.find(term);
    ASSERT_TRUE(index.has_value());
    ASSERT_LE(after[*index].idf, before[*before.find(term)].idf);
  }
}

TEST(Transform, IndependentOfCorpusOrder) {
  const std::vector<std::string> docs = {"barang bagus murah", "barang jelek", "bagus sekali barang", "murah jelek"};
  auto reversed = docs;
  std::reverse(reversed.begin(), reversed.end());
  const auto config = unigram_config(1);
  const auto a = fit_vocabulary(docs, config);
  const auto b = fit_vocabulary(reversed, config);
  EXPECT_EQ(a, b);
  for (const auto& d : docs) EXPECT_EQ(transform(d, a, config), transform(d, b, config));
}

TEST(Transform, RawCountsWhenSublinearDisabled) {
  auto config = unigram_config(1);
  config.sublinear_tf = false;
  const auto vocab = fit_vocabulary(std::vector<std::string>{"aa bb", "aa"}, config);
  // aa: tf 3, idf ln(3/3)+1 = 1; bb: tf 1, idf ln(3/2)+1.
  const auto x = transform("aa aa aa bb", vocab, config);
  const double a = 3.0, b = std::log(1.5) + 1.0, n = std::sqrt(a * a + b * b);
  EXPECT_NEAR(x.values[0], a / n, 1e-15);
  EXPECT_NEAR(x.values[1], b / n, 1e-15);
}
