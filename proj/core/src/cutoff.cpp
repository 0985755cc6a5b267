#include "fsel/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fsel/error.hpp"

namespace fsel {

RankedScores RankedScores::fromScores(const ScoreVector& scores, std::size_t width, bool maximize) {
  RankedScores r;
  r.entries = scores;
  r.width = width;
  r.maximize = maximize;
  std::stable_sort(r.entries.begin(), r.entries.end(), [&](const FeatureScore& a, const FeatureScore& b) {
    if (isBetter(a.score, b.score, maximize)) return true;
    if (isBetter(b.score, a.score, maximize)) return false;
    return a.index < b.index;
  });
  return r;
}

RankedScores rankFeatures(const Dataset& d, const Measure& m) {
  return RankedScores::fromScores(m.scoreAll(d), d.featureCount(), m.maximize());
}

namespace {

FeatureMask topN(const RankedScores& r, std::size_t count) {
  FeatureMask m(r.width);
  for (std::size_t i = 0; i < count && i < r.entries.size(); ++i) m.set(r.entries[i].index);
  return m;
}

template <typename GapTooLarge>
FeatureMask cutAtGap(const RankedScores& r, GapTooLarge too_large) {
  std::size_t keep = r.entries.size();
  for (std::size_t i = 0; i + 1 < r.entries.size(); ++i) {
    if (too_large(std::abs(r.entries[i].score - r.entries[i + 1].score))) {
      keep = i + 1;
      break;
    }
  }
  return topN(r, keep);
}

}  // namespace

FeatureMask cutKBest(const RankedScores& r, std::size_t k) {
  if (k < 1 || k > r.entries.size()) {
    throw Error(ErrorCode::OutOfRange, "selectKBest: k=" + std::to_string(k) + " outside [1, " +
                                           std::to_string(r.entries.size()) + "]");
  }
  return topN(r, k);
}

FeatureMask cutPercentile(const RankedScores& r, double percentile) {
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    throw Error(ErrorCode::OutOfRange, "selectPercentile: percentile must lie in (0, 100]");
  }
  const double n = static_cast<double>(r.entries.size());
  return topN(r, static_cast<std::size_t>(std::ceil(n * percentile / 100.0)));
}

FeatureMask cutThreshold(const RankedScores& r, double threshold) {
  FeatureMask m(r.width);
  for (const auto& e : r.entries) {
    if (r.maximize ? e.score >= threshold : e.score <= threshold) m.set(e.index);
  }
  return m;
}

FeatureMask cutThresholdRange(const RankedScores& r, double lo, double hi) {
  if (lo > hi) throw Error(ErrorCode::OutOfRange, "selectThresholdRange: lower bound exceeds upper bound");
  FeatureMask m(r.width);
  for (const auto& e : r.entries) {
    if (e.score >= lo && e.score <= hi) m.set(e.index);
  }
  return m;
}

FeatureMask cutDifference(const RankedScores& r, double d_cut) {
  if (d_cut < 0.0) throw Error(ErrorCode::OutOfRange, "selectDifference: cut must be >= 0");
  return cutAtGap(r, [&](double gap) { return gap > d_cut; });
}

FeatureMask cutSlope(const RankedScores& r, double s_cut) {
  if (s_cut < 0.0) throw Error(ErrorCode::OutOfRange, "selectSlope: cut must be >= 0");
  // gap * n > s_cut, phrased as a difference cut so both agree bit for bit.
  return cutDifference(r, s_cut / static_cast<double>(std::max<std::size_t>(r.entries.size(), 1)));
}

SearchResult selectionResult(const RankedScores& r, const FeatureMask& selected) {
  SearchResult out;
  out.best_masks = {selected};
  out.empty_selection = selected.empty();
  out.evaluations = r.entries.size();
  out.best_value = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const auto& e = r.entries[i];
    out.trace.push_back({i, "", "ranking", {FeatureMask::fromIndices(r.width, {e.index})}, {e.score}});
    if (selected.test(e.index)) out.best_value = e.score;
  }
  return out;
}

SearchResult selectKBest(const Dataset& d, const Measure& m, std::size_t k) {
  const auto r = rankFeatures(d, m);
  return selectionResult(r, cutKBest(r, k));
}

SearchResult selectPercentile(const Dataset& d, const Measure& m, double percentile) {
  const auto r = rankFeatures(d, m);
  return selectionResult(r, cutPercentile(r, percentile));
}

SearchResult selectThreshold(const Dataset& d, const Measure& m, double threshold) {
  const auto r = rankFeatures(d, m);
  return selectionResult(r, cutThreshold(r, threshold));
}

SearchResult selectThresholdRange(const Dataset& d, const Measure& m, double lo, double hi) {
  const auto r = rankFeatures(d, m);
  return selectionResult(r, cutThresholdRange(r, lo, hi));
}

SearchResult selectDifference(const Dataset& d, const Measure& m, double d_cut) {
  const auto r = rankFeatures(d, m);
  return selectionResult(r, cutDifference(r, d_cut));
}

SearchResult selectSlope(const Dataset& d, const Measure& m, double s_cut) {
  const auto r = rankFeatures(d, m);
  return selectionResult(r, cutSlope(r, s_cut));
}

}  // namespace fsel
