#include "fsel/feature_mask.hpp"

#include <bit>

#include "fsel/error.hpp"
#include "fsel/random.hpp"

namespace fsel {

namespace {
constexpr std::size_t wordCount(std::size_t width) { return (width + 63) / 64; }
}  // namespace

FeatureMask::FeatureMask(std::size_t width) : width_(width), words_(wordCount(width), 0) {}

FeatureMask FeatureMask::full(std::size_t width) {
  FeatureMask m(width);
  for (std::size_t i = 0; i < width; ++i) m.set(i);
  return m;
}

FeatureMask FeatureMask::fromIndices(std::size_t width, const std::vector<std::size_t>& indices) {
  FeatureMask m(width);
  for (auto i : indices) {
    if (i >= width) {
      throw Error(ErrorCode::OutOfRange,
                  "feature index " + std::to_string(i) + " outside mask of width " +
                      std::to_string(width));
    }
    m.set(i);
  }
  return m;
}

FeatureMask FeatureMask::fromString(const std::string& bits) {
  FeatureMask m(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      m.set(i);
    } else if (bits[i] != '0') {
      throw Error(ErrorCode::Parse, "mask string must contain only 0 and 1: '" + bits + "'");
    }
  }
  return m;
}

FeatureMask FeatureMask::randomNonEmpty(std::size_t width, Rng& rng) {
  if (width == 0) throw Error(ErrorCode::InvalidArgument, "cannot draw a mask of width 0");
  for (;;) {
    FeatureMask m(width);
    for (std::size_t i = 0; i < width; ++i) m.set(i, (rng.next() >> 63) != 0);
    if (!m.empty()) return m;
  }
}

void FeatureMask::set(std::size_t i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= bit;
  } else {
    words_[i / 64] &= ~bit;
  }
}

void FeatureMask::flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

FeatureMask FeatureMask::flipped(std::size_t i) const {
  FeatureMask m = *this;
  m.flip(i);
  return m;
}

std::size_t FeatureMask::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool FeatureMask::isSubsetOf(const FeatureMask& other) const {
  requireWidth(other, width_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

std::vector<std::size_t> FeatureMask::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < width_; ++i) {
    if (test(i)) out.push_back(i);
  }
  return out;
}

std::string FeatureMask::toString() const {
  std::string s(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

bool operator<(const FeatureMask& a, const FeatureMask& b) {
  const std::size_t n = std::min(a.width_, b.width_);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.test(i) != b.test(i)) return !a.test(i);
  }
  return a.width_ < b.width_;
}

std::size_t FeatureMask::hash() const noexcept {
  std::size_t h = width_ * 0x9E3779B97F4A7C15ull;
  for (auto w : words_) h = (h ^ w) * 0x100000001B3ull + (h >> 29);
  return h;
}

void requireWidth(const FeatureMask& mask, std::size_t expected) {
  if (mask.width() != expected) {
    throw Error(ErrorCode::WidthMismatch, "mask width " + std::to_string(mask.width()) +
                                              " does not match " + std::to_string(expected) +
                                              " features");
  }
}

void requireNonEmpty(const FeatureMask& mask) {
  if (mask.empty()) throw Error(ErrorCode::EmptyMask, "feature mask selects no features");
}

}  // namespace fsel
