#include <optional>

#include "search_context.hpp"

namespace fsel {

namespace {

struct Step {
  FeatureMask mask;
  double value;
  std::size_t feature;  // added or removed
};

// Best single addition (add = true) or removal from `current`, skipping
// `excluded`. Ties resolve to the lowest feature index. nullopt when there
// is no candidate.
std::optional<Step> bestMove(detail::SearchContext& ctx, const FeatureMask& current, bool add,
                             std::optional<std::size_t> excluded = std::nullopt) {
  std::vector<FeatureMask> candidates;
  std::vector<std::size_t> features;
  for (std::size_t f = 0; f < ctx.width(); ++f) {
    if (current.test(f) == add || f == excluded) continue;
    FeatureMask next = current.flipped(f);
    if (next.empty()) continue;
    candidates.push_back(std::move(next));
    features.push_back(f);
  }
  if (candidates.empty()) return std::nullopt;
  const auto values = ctx.evaluateBatch(candidates);
  const auto best = detail::argBest(values, ctx.maximize());
  return Step{candidates[best], values[best], features[best]};
}

std::string maskLine(const char* tag, std::size_t iter, const FeatureMask& m, double value) {
  return std::string(tag) + " | Iter=" + std::to_string(iter) + " | Vector=" + m.toString() +
         " | Fitness=" + detail::formatFixed(value, 4);
}

// Best mask per cardinality for the floating searches.
class LevelTable {
 public:
  LevelTable(std::size_t n, bool maximize) : levels_(n + 1), maximize_(maximize) {}

  bool improves(const FeatureMask& m, double value) const {
    const auto& slot = levels_[m.count()];
    return !slot || isBetter(value, slot->second, maximize_);
  }
  void update(const FeatureMask& m, double value) {
    if (improves(m, value)) levels_[m.count()] = std::make_pair(m, value);
  }
  // Overall best; ties go to the smaller cardinality.
  std::pair<FeatureMask, double> best() const {
    std::optional<std::pair<FeatureMask, double>> out;
    for (const auto& slot : levels_) {
      if (slot && (!out || isBetter(slot->second, out->second, maximize_))) out = slot;
    }
    return *out;
  }

 private:
  std::vector<std::optional<std::pair<FeatureMask, double>>> levels_;
  bool maximize_;
};

SearchResult floating(const Dataset& d, const Measure& m, const SearchOptions& opts, bool forward) {
  const char* tag = forward ? "SFFS" : "SFBS";
  detail::SearchContext ctx(d, m, opts, forward ? "sffs" : "sfbs");
  const std::size_t n = ctx.width();
  LevelTable table(n, ctx.maximize());
  FeatureMask current = forward ? FeatureMask(n) : FeatureMask::full(n);
  std::size_t iter = 0;
  if (!forward) {
    const double v = ctx.evaluate(current);
    table.update(current, v);
    ctx.record(iter, "", "initial", {current}, {v});
  }
  const std::size_t stop_size = forward ? n : 1;

  while (current.count() != stop_size) {
    // Main step always moves one level; it is recorded when it improves
    // the level table.
    auto step = bestMove(ctx, current, forward);
    if (!step) break;
    ++iter;
    current = step->mask;
    table.update(current, step->value);
    ctx.record(iter, "", forward ? "add" : "remove", {current}, {step->value});
    ctx.log(maskLine(tag, iter, current, step->value));

    // Conditional steps in the opposite direction, never undoing the main
    // step's feature.
    const std::size_t last = step->feature;
    for (;;) {
      if (forward ? current.count() <= 1 : current.count() >= n) break;
      auto back = bestMove(ctx, current, !forward, last);
      if (!back || !table.improves(back->mask, back->value)) break;
      current = back->mask;
      table.update(current, back->value);
      ctx.record(iter, "", forward ? "conditionalRemove" : "conditionalAdd", {current}, {back->value});
      ctx.log(maskLine(tag, iter, current, back->value));
    }
  }
  const auto [best, value] = table.best();
  return ctx.finishWith(best, value);
}

}  // namespace

SearchResult sfs(const Dataset& d, const Measure& m, const SearchOptions& opts) {
  detail::SearchContext ctx(d, m, opts, "sfs");
  FeatureMask current(ctx.width());
  double value = worstValue(ctx.maximize());
  std::size_t iter = 0;
  while (current.count() < ctx.width()) {
    auto step = bestMove(ctx, current, true);
    if (!step || !ctx.better(step->value, value)) break;
    current = step->mask;
    value = step->value;
    ++iter;
    ctx.record(iter, "", "add", {current}, {value});
    ctx.log(maskLine("SFS", iter, current, value));
  }
  return ctx.finishWith(current, value);
}

SearchResult sbs(const Dataset& d, const Measure& m, const SearchOptions& opts) {
  detail::SearchContext ctx(d, m, opts, "sbs");
  FeatureMask current = FeatureMask::full(ctx.width());
  double value = ctx.evaluate(current);
  std::size_t iter = 0;
  ctx.record(iter, "", "initial", {current}, {value});
  while (current.count() > 1) {
    auto step = bestMove(ctx, current, false);
    // Non-degrading removals are accepted.
    if (!step || ctx.better(value, step->value)) break;
    current = step->mask;
    value = step->value;
    ++iter;
    ctx.record(iter, "", "remove", {current}, {value});
    ctx.log(maskLine("SBS", iter, current, value));
  }
  return ctx.finishWith(current, value);
}

SearchResult sffs(const Dataset& d, const Measure& m, const SearchOptions& opts) {
  return floating(d, m, opts, true);
}

SearchResult sfbs(const Dataset& d, const Measure& m, const SearchOptions& opts) {
  return floating(d, m, opts, false);
}

}  // namespace fsel
