#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace tightpack {

// Stream format version. Bump whenever any draw sequence changes, since
// golden values in tests and on-disk reports depend on it.
inline constexpr int kRngStreamVersion = 1;

/// SplitMix64 finalizer. Used for seeding and for counter-based coins.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based Bernoulli coin: the outcome depends only on (key, counter).
/// Lets generators decide each edge independently of enumeration order.
bool counter_coin(std::uint64_t key, std::uint64_t counter, double p);

/// Uniform double in [0, 1) with 53 bits, from a raw 64-bit word.
double to_unit_double(std::uint64_t bits);

/// Seeded random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Distributions are implemented here rather than taken from
/// <random>, because the standard library distributions are not specified
/// bit-for-bit and would break cross-platform reproducibility.
///
/// Substreams: child(i) depends only on this stream's seed and i, never on
/// how many values have been drawn, so nested procedures can be evaluated in
/// any order (or concurrently) and still produce identical results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  Rng child(std::uint64_t index) const;

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  double uniform01() { return to_unit_double(engine_()); }
  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tightpack
