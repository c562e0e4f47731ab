#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace senti {

/// SplitMix64 (Steele, Lea, Flood). Fixed so that splits are reproducible
/// bit-for-bit from any language.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()() noexcept { return next(); }

 private:
  std::uint64_t state_;
};

/// Descending Fisher–Yates: for i = n-1 … 1, swap(i, next() mod (i+1)).
/// The plain modulo reduction is part of the reproducibility contract.
template <typename T>
void fisher_yates(std::span<T> items, SplitMix64& rng) {
  if (items.size() < 2) return;
  for (std::size_t i = items.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.next() % (static_cast<std::uint64_t>(i) + 1));
    std::swap(items[i], items[j]);
  }
}

}  // namespace senti
