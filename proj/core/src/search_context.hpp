#pragma once

#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "fsel/search.hpp"

namespace fsel::detail {

// Keeps every distinct mask tying the incumbent best value.
class BestTracker {
 public:
  explicit BestTracker(bool maximize) : maximize_(maximize), value_(worstValue(maximize)) {}

  // Returns true when `value` strictly improved the incumbent.
  bool offer(const FeatureMask& m, double value);

  bool hasValue() const noexcept { return !masks_.empty(); }
  double value() const noexcept { return value_; }
  const std::vector<FeatureMask>& masks() const noexcept { return masks_; }

 private:
  bool maximize_;
  double value_;
  std::vector<FeatureMask> masks_;
  std::unordered_set<FeatureMask> seen_;
};

// Per-run state shared by the search implementations: bound scorer,
// evaluation counter, trace, and parallel batch evaluation.
class SearchContext {
 public:
  SearchContext(const Dataset& d, const Measure& m, const SearchOptions& opts, std::string_view search);

  std::size_t width() const noexcept { return width_; }
  bool maximize() const noexcept { return maximize_; }
  bool better(double a, double b) const noexcept { return isBetter(a, b, maximize_); }

  double evaluate(const FeatureMask& m);
  // Values in input order regardless of thread count.
  std::vector<double> evaluateBatch(std::span<const FeatureMask> masks);

  void record(std::size_t iteration, std::string stage, std::string label,
              std::vector<FeatureMask> masks, std::vector<double> values);
  void log(const std::string& line) const;
  bool logging() const noexcept { return static_cast<bool>(opts_.log); }

  BestTracker& tracker() noexcept { return tracker_; }

  // Result built from the tracker's tie set.
  SearchResult finish();
  // Result with an explicit single best mask.
  SearchResult finishWith(const FeatureMask& best, double value);

 private:
  const SearchOptions& opts_;
  MaskScorer scorer_;
  std::size_t width_;
  bool maximize_;
  std::size_t evaluations_ = 0;
  std::vector<TraceEvent> trace_;
  BestTracker tracker_;
};

// Index of the best value; ties resolve to the lowest index.
std::size_t argBest(std::span<const double> values, bool maximize);

std::string formatFixed(double v, int decimals);

}  // namespace fsel::detail
