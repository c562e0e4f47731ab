// Fit a balanced linear SVM on a handful of reviews and classify new text.
//
//   train_in_memory

#include <iostream>

#include <senti.hpp>

int main() {
  using namespace senti;
  const std::vector<RawRecord> raw = {
      {"Barang BAGUS, pengiriman cepat!!", "positif"}, {"mantap, sesuai pesanan", "positif"},
      {"bagus murah mantap", "positif"},               {"kualitas bagus sekali", "positif"},
      {"biasa saja, standar", "netral"},               {"lumayan lah untuk harganya", "netral"},
      {"barang rusak, kecewa :(", "negatif"},
  };
  const auto clean = clean_corpus(raw);

  FeatureConfig features;
  features.min_df = 1;
  const auto vocab = fit_vocabulary(clean.reviews, features);
  const auto X = transform_all(clean.reviews, vocab, features);
  std::vector<SentimentLabel> y;
  for (const auto& r : clean.reviews) y.push_back(r.label);

  const auto weights = compute_class_weights(count_classes(y), WeightMode::Balanced);
  const auto fit = train_svm_ovr(X, y, vocab.size(), weights, {});

  for (const char* text : {"pengiriman cepat, barang bagus", "rusak!!!", "standar"}) {
    const auto x = transform(preprocess_text(text), vocab, features);
    const auto p = predict_svm(fit.model, x);
    std::cout << class_name(p.label) << "\t" << text << "\n";
  }
}
