#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fsel {

class Rng;

// Fixed-width bit vector over the non-class columns of a dataset.
class FeatureMask {
 public:
  FeatureMask() = default;
  explicit FeatureMask(std::size_t width);

  static FeatureMask full(std::size_t width);
  static FeatureMask fromIndices(std::size_t width, const std::vector<std::size_t>& indices);
  // Parses "1010"; the first character is feature 0.
  static FeatureMask fromString(const std::string& bits);
  // Uniform over the 2^width - 1 non-empty masks.
  static FeatureMask randomNonEmpty(std::size_t width, Rng& rng);

  std::size_t width() const noexcept { return width_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);
  FeatureMask flipped(std::size_t i) const;

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  bool isSubsetOf(const FeatureMask& other) const;

  std::vector<std::size_t> indices() const;
  std::string toString() const;

  // Lexicographic on bit position 0 first; used only for canonical ordering.
  friend bool operator<(const FeatureMask& a, const FeatureMask& b);
  friend bool operator==(const FeatureMask& a, const FeatureMask& b) = default;

  std::size_t hash() const noexcept;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

// Throws WidthMismatch unless mask.width() == expected.
void requireWidth(const FeatureMask& mask, std::size_t expected);
// Throws EmptyMask when no bit is set.
void requireNonEmpty(const FeatureMask& mask);

}  // namespace fsel

template <>
struct std::hash<fsel::FeatureMask> {
  std::size_t operator()(const fsel::FeatureMask& m) const noexcept { return m.hash(); }
};
