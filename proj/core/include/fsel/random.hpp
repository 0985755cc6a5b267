#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace fsel {

// Stream identifiers used to split one top-level seed into independent
// generators. Values are part of the replay contract; never renumber.
enum class RngStream : std::uint64_t {
  Search = 1,
  Folds = 2,
  Relief = 3,
};

// SplitMix64 finalizer applied to seed + golden-ratio * (stream + 1).
std::uint64_t deriveSeed(std::uint64_t seed, RngStream stream) noexcept;

// Deterministic generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the integer/real mappings are defined
// here instead of using std::uniform_*_distribution, whose algorithms are
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be > 0. Rejection sampling on the top
  // of the 64-bit range removes modulo bias.
  std::uint64_t uniformIndex(std::uint64_t n);

  // Uniform real in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Fisher-Yates, walking from the back.
  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniformIndex(i));
      using std::swap;
      swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fsel
