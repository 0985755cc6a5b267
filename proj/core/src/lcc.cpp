#include <algorithm>
#include <numeric>

#include "fsel/error.hpp"
#include "search_context.hpp"

namespace fsel {

SearchResult lcc(const Dataset& d, const Measure& set_measure, const Measure& individual,
                 const LccConfig& cfg, const SearchOptions& opts) {
  detail::SearchContext ctx(d, set_measure, opts, "lcc");
  const std::size_t n = ctx.width();

  // Least relevant first under the individual measure's own orientation.
  const ScoreVector scores = individual.scoreAll(d);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return isBetter(scores[b].score, scores[a].score, individual.maximize());
  });
  {
    std::vector<FeatureMask> ranked;
    std::vector<double> values;
    for (auto f : order) {
      ranked.push_back(FeatureMask::fromIndices(n, {f}));
      values.push_back(scores[f].score);
    }
    ctx.record(0, "", "relevance", std::move(ranked), std::move(values));
  }

  FeatureMask current = FeatureMask::full(n);
  double value = ctx.evaluate(current);
  const double threshold = cfg.threshold.value_or(value);
  if (ctx.better(threshold, value)) {
    throw Error(ErrorCode::InvalidArgument,
                "lcc: threshold " + detail::formatFixed(threshold, 6) +
                    " is not reached by the full feature set (value " + detail::formatFixed(value, 6) + ")");
  }
  ctx.record(0, "", "initial", {current}, {value, threshold});

  std::size_t iter = 0;
  for (auto f : order) {
    if (current.count() == 1) break;
    ++iter;
    FeatureMask candidate = current.flipped(f);
    const double v = ctx.evaluate(candidate);
    const bool keep_removal = !ctx.better(threshold, v);
    if (keep_removal) {
      current = std::move(candidate);
      value = v;
    }
    ctx.record(iter, "", keep_removal ? "removed" : "kept", {current}, {v});
    ctx.log("LCC | Iter=" + std::to_string(iter) + " | Feature=" + d.feature(f).name() +
            (keep_removal ? " | removed" : " | kept") + " | Fitness=" + detail::formatFixed(v, 4));
  }
  return ctx.finishWith(current, value);
}

}  // namespace fsel
