// Load a saved model envelope and print the JSON inference record for each
// argument.
//
//   classify_saved model.json "barang bagus" "kurang puas"

#include <iostream>

#include <senti.hpp>

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: " << argv[0] << " <model.json> <text>...\n";
    return 2;
  }
  try {
    const auto bundle = senti::load_model(argv[1]);
    for (int i = 2; i < argc; ++i) std::cout << senti::to_json(senti::infer(bundle, argv[i])).dump() << "\n";
  } catch (const senti::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
