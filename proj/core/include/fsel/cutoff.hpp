#pragma once

#include <string>
#include <vector>

#include "fsel/dataset.hpp"
#include "fsel/measures.hpp"
#include "fsel/search.hpp"

namespace fsel {

// Feature scores sorted best-first under `maximize`; ties keep the lower
// column index first.
struct RankedScores {
  std::vector<FeatureScore> entries;
  std::size_t width = 0;
  bool maximize = true;

  static RankedScores fromScores(const ScoreVector& scores, std::size_t width, bool maximize);
};

// Scores every feature with `m` (set measures via singleton masks) and ranks.
RankedScores rankFeatures(const Dataset& d, const Measure& m);

// Pure cutoffs over a ranking. Each returns the selected mask (possibly
// empty for the threshold-style cutoffs).
FeatureMask cutKBest(const RankedScores& r, std::size_t k);
FeatureMask cutPercentile(const RankedScores& r, double percentile);
FeatureMask cutThreshold(const RankedScores& r, double threshold);
FeatureMask cutThresholdRange(const RankedScores& r, double lo, double hi);
// Cuts before the first adjacent gap larger than d_cut.
FeatureMask cutDifference(const RankedScores& r, double d_cut);
// Same, with each gap multiplied by the feature count.
FeatureMask cutSlope(const RankedScores& r, double s_cut);

// Dataset-level direct selection. The trace holds the ranking; best_value
// is the lowest-ranked selected score, NaN for an empty selection.
SearchResult selectKBest(const Dataset& d, const Measure& m, std::size_t k);
SearchResult selectPercentile(const Dataset& d, const Measure& m, double percentile);
SearchResult selectThreshold(const Dataset& d, const Measure& m, double threshold);
SearchResult selectThresholdRange(const Dataset& d, const Measure& m, double lo, double hi);
SearchResult selectDifference(const Dataset& d, const Measure& m, double d_cut);
SearchResult selectSlope(const Dataset& d, const Measure& m, double s_cut);

// Wraps a cutoff mask into a SearchResult.
SearchResult selectionResult(const RankedScores& r, const FeatureMask& selected);

}  // namespace fsel
