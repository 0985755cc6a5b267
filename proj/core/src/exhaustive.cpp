#include <algorithm>
#include <functional>

#include "fsel/error.hpp"
#include "search_context.hpp"

namespace fsel {

namespace {

// Per-visit trace events are kept up to this many features (2^16 - 1 visits).
constexpr std::size_t kVisitTraceLimit = 16;
constexpr std::size_t kBatch = 4096;

// Increasing cardinality; lexicographic index combinations within one.
std::vector<FeatureMask> breadthFirstOrder(std::size_t n) {
  std::vector<FeatureMask> order;
  std::vector<std::size_t> comb;
  for (std::size_t k = 1; k <= n; ++k) {
    comb.resize(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    for (;;) {
      order.push_back(FeatureMask::fromIndices(n, comb));
      std::size_t i = k;
      while (i > 0 && comb[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return order;
}

// Pre-order walk of the subset tree: {0}, {0,1}, {0,1,2}, {0,2}, {1}, ...
std::vector<FeatureMask> depthFirstOrder(std::size_t n) {
  std::vector<FeatureMask> order;
  std::function<void(FeatureMask&, std::size_t)> walk = [&](FeatureMask& prefix, std::size_t start) {
    for (std::size_t j = start; j < n; ++j) {
      prefix.set(j);
      order.push_back(prefix);
      walk(prefix, j + 1);
      prefix.set(j, false);
    }
  };
  FeatureMask root(n);
  walk(root, 0);
  return order;
}

SearchResult exhaustive(const Dataset& d, const Measure& m, const ExhaustiveConfig& cfg,
                        const SearchOptions& opts, bool breadth_first) {
  const char* name = breadth_first ? "exhaustiveBFS" : "exhaustiveDFS";
  detail::SearchContext ctx(d, m, opts, name);
  const std::size_t n = ctx.width();
  if (n > cfg.max_features) {
    throw Error(ErrorCode::OutOfRange, std::string(name) + ": " + std::to_string(n) +
                                           " features exceed the cap of " +
                                           std::to_string(cfg.max_features));
  }
  const auto order = breadth_first ? breadthFirstOrder(n) : depthFirstOrder(n);
  const bool trace_visits = n <= kVisitTraceLimit;
  std::size_t iteration = 0;
  for (std::size_t start = 0; start < order.size(); start += kBatch) {
    const std::size_t len = std::min(kBatch, order.size() - start);
    std::span<const FeatureMask> chunk(order.data() + start, len);
    const auto values = ctx.evaluateBatch(chunk);
    for (std::size_t i = 0; i < len; ++i) {
      ctx.tracker().offer(chunk[i], values[i]);
      if (trace_visits) ctx.record(iteration, "", "visit", {chunk[i]}, {values[i]});
      ++iteration;
    }
  }
  if (!trace_visits) {
    ctx.record(iteration, "", "best", ctx.tracker().masks(), {ctx.tracker().value()});
  }
  return ctx.finish();
}

}  // namespace

SearchResult exhaustiveBFS(const Dataset& d, const Measure& m, const ExhaustiveConfig& cfg,
                           const SearchOptions& opts) {
  return exhaustive(d, m, cfg, opts, true);
}

SearchResult exhaustiveDFS(const Dataset& d, const Measure& m, const ExhaustiveConfig& cfg,
                           const SearchOptions& opts) {
  return exhaustive(d, m, cfg, opts, false);
}

}  // namespace fsel
