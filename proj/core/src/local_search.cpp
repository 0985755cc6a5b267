#include <cmath>

#include "fsel/error.hpp"
#include "fsel/random.hpp"
#include "search_context.hpp"

namespace fsel {

namespace {

// All single-bit flips that leave at least one feature selected.
std::vector<FeatureMask> flipNeighbors(const FeatureMask& m) {
  std::vector<FeatureMask> out;
  out.reserve(m.width());
  for (std::size_t f = 0; f < m.width(); ++f) {
    FeatureMask next = m.flipped(f);
    if (!next.empty()) out.push_back(std::move(next));
  }
  return out;
}

}  // namespace

SearchResult hillClimbing(const Dataset& d, const Measure& m, const HillClimbingConfig& cfg,
                          const SearchOptions& opts) {
  if (cfg.restarts < 1) throw Error(ErrorCode::Config, "hillClimbing needs restarts >= 1");
  detail::SearchContext ctx(d, m, opts, "hillClimbing");
  Rng rng(cfg.seed);
  std::size_t iter = 0;
  for (int restart = 1; restart <= cfg.restarts; ++restart) {
    const std::string stage = "restart" + std::to_string(restart);
    FeatureMask current = FeatureMask::randomNonEmpty(ctx.width(), rng);
    double value = ctx.evaluate(current);
    ctx.tracker().offer(current, value);
    ctx.record(iter, stage, "initial", {current}, {value});
    ctx.log("HC | InitialVector=" + current.toString() + " | InitialFitness=" + detail::formatFixed(value, 4));
    for (;;) {
      const auto neighbors = flipNeighbors(current);
      if (neighbors.empty()) break;
      const auto values = ctx.evaluateBatch(neighbors);
      const auto best = detail::argBest(values, ctx.maximize());
      if (!ctx.better(values[best], value)) break;
      current = neighbors[best];
      value = values[best];
      ++iter;
      ctx.tracker().offer(current, value);
      ctx.record(iter, stage, "bestNeighbor", {current}, {value});
      ctx.log("HC | Iter=" + std::to_string(iter) + " | Vector=" + current.toString() +
              " | Fitness=" + detail::formatFixed(value, 4));
    }
  }
  return ctx.finish();
}

double annealingAcceptance(double delta, double temperature) noexcept {
  if (delta >= 0.0) return 1.0;
  return std::exp(delta / temperature);
}

SearchResult simulatedAnnealing(const Dataset& d, const Measure& m, const SAConfig& cfg,
                                const SearchOptions& opts) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw Error(ErrorCode::Config, "simulatedAnnealing needs 0 < alpha < 1");
  }
  if (!(cfg.t_min > 0.0) || !(cfg.t0 > 0.0)) {
    throw Error(ErrorCode::Config, "simulatedAnnealing needs positive t0 and t_min");
  }
  if (cfg.inner_iter < 1) throw Error(ErrorCode::Config, "simulatedAnnealing needs inner_iter >= 1");
  detail::SearchContext ctx(d, m, opts, "simulatedAnnealing");
  Rng rng(cfg.seed);
  const std::size_t n = ctx.width();
  const double sign = ctx.maximize() ? 1.0 : -1.0;

  FeatureMask current = FeatureMask::randomNonEmpty(n, rng);
  double value = ctx.evaluate(current);
  ctx.tracker().offer(current, value);
  ctx.record(0, "", "initial", {current}, {value});
  ctx.log("SA | InitialVector=" + current.toString() + " | InitialFitness=" + detail::formatFixed(value, 4));

  std::size_t iter = 0;
  for (double t = cfg.t0; t > cfg.t_min; t *= cfg.alpha) {
    for (int step = 0; step < cfg.inner_iter; ++step) {
      if (n == 1) break;  // the only flip would empty the mask
      FeatureMask next = current;
      do {
        next = current.flipped(static_cast<std::size_t>(rng.uniformIndex(n)));
      } while (next.empty());
      const double next_value = ctx.evaluate(next);
      ctx.tracker().offer(next, next_value);
      const double delta = sign * (next_value - value);
      const bool accept = delta >= 0.0 || rng.uniform01() < annealingAcceptance(delta, t);
      if (accept) {
        current = std::move(next);
        value = next_value;
      }
    }
    ++iter;
    ctx.record(iter, "", "temperature", {current}, {t, value, ctx.tracker().value()});
    ctx.log("SA | Iter=" + std::to_string(iter) + " | T=" + detail::formatFixed(t, 6) +
            " | Vector=" + current.toString() + " | Fitness=" + detail::formatFixed(value, 4) +
            " | BestFitness=" + detail::formatFixed(ctx.tracker().value(), 4));
  }
  return ctx.finish();
}

SearchResult lasVegasWrapper(const Dataset& d, const Measure& m, const LVWConfig& cfg,
                             const SearchOptions& opts) {
  if (cfg.max_stale_iter < 1) throw Error(ErrorCode::Config, "lasVegasWrapper needs max_stale_iter >= 1");
  detail::SearchContext ctx(d, m, opts, "lasVegasWrapper");
  Rng rng(cfg.seed);
  std::optional<FeatureMask> incumbent;
  double value = worstValue(ctx.maximize());
  int stale = 0;
  std::size_t iter = 0;
  while (stale < cfg.max_stale_iter) {
    ++iter;
    FeatureMask draw = FeatureMask::randomNonEmpty(ctx.width(), rng);
    const double v = ctx.evaluate(draw);
    const bool adopt = !incumbent || ctx.better(v, value) ||
                       (v == value && draw.count() < incumbent->count());
    if (!adopt) {
      ++stale;
      continue;
    }
    stale = 0;
    incumbent = std::move(draw);
    value = v;
    ctx.record(iter, "", "adopted", {*incumbent}, {value});
    ctx.log("LVW | Iter=" + std::to_string(iter) + " | Vector=" + incumbent->toString() +
            " | Fitness=" + detail::formatFixed(value, 4));
  }
  return ctx.finishWith(*incumbent, value);
}

}  // namespace fsel
