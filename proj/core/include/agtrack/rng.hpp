#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace agtrack {

/// Seeded random source with platform-independent draws. std::mt19937_64
/// output is fixed by the standard; the distributions below are written out
/// so emitted files and split manifests match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::size_t uniform(std::size_t bound);

  bool coin() { return (engine_() >> 63) != 0; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[uniform(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent seed for a named sub-stream (e.g. one dialogue).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view key);

}  // namespace agtrack
