#include <algorithm>
#include <deque>

#include "fsel/error.hpp"
#include "fsel/random.hpp"
#include "search_context.hpp"

namespace fsel {

namespace {

class TabuRun {
 public:
  TabuRun(detail::SearchContext& ctx, const TabuConfig& cfg)
      : ctx_(ctx), cfg_(cfg), frequency_(ctx.width(), 0) {}

  // One stage: start from `start`, run `iterations` moves with a fresh tabu
  // list holding only the start.
  void stage(const std::string& name, FeatureMask start, int iterations) {
    tabu_.clear();
    FeatureMask current = std::move(start);
    double value = ctx_.evaluate(current);
    accept(current, value);
    ctx_.record(iter_, name, "bestNeighbor", {current}, {value});
    ctx_.record(iter_, name, "tabuList", snapshot(), {});
    ctx_.log("TS | InitialVector=" + current.toString() + " | InitialFitness=" + detail::formatFixed(value, 4));

    for (int local = 1; local <= iterations; ++local) {
      std::vector<FeatureMask> neighbors;
      for (std::size_t f = 0; f < ctx_.width(); ++f) {
        FeatureMask next = current.flipped(f);
        if (!next.empty()) neighbors.push_back(std::move(next));
      }
      if (neighbors.empty()) break;
      const auto values = ctx_.evaluateBatch(neighbors);
      const double global = ctx_.tracker().value();

      std::optional<std::size_t> chosen;
      for (std::size_t i = 0; i < neighbors.size(); ++i) {
        const bool admissible = !isTabu(neighbors[i]) || ctx_.better(values[i], global);
        if (admissible && (!chosen || ctx_.better(values[i], values[*chosen]))) chosen = i;
      }
      ++iter_;
      bool forced = false;
      if (!chosen) {
        // Every neighbor is tabu: take the one closest to leaving the list.
        forced = true;
        for (const auto& entry : tabu_) {
          auto it = std::find(neighbors.begin(), neighbors.end(), entry);
          if (it != neighbors.end()) {
            chosen = static_cast<std::size_t>(it - neighbors.begin());
            break;
          }
        }
      }
      current = neighbors[*chosen];
      value = values[*chosen];
      accept(current, value);
      if (forced) ctx_.record(iter_, name, "forcedAcceptance", {current}, {value});
      ctx_.record(iter_, name, "bestNeighbor", {current}, {value});
      ctx_.record(iter_, name, "tabuList", snapshot(), {});
      ctx_.log("TS | Iter=" + std::to_string(local) + " | Vector=" + current.toString() +
               " | Fitness=" + detail::formatFixed(value, 4) +
               " | BestFitness=" + detail::formatFixed(ctx_.tracker().value(), 4));
    }
  }

  // Features whose selection frequency is below the mean; falls back to the
  // single least frequent feature (lowest index on ties).
  FeatureMask leastFrequent() const {
    const std::size_t n = frequency_.size();
    double mean = 0.0;
    for (auto c : frequency_) mean += static_cast<double>(c);
    mean /= static_cast<double>(n);
    FeatureMask m(n);
    for (std::size_t f = 0; f < n; ++f) {
      if (static_cast<double>(frequency_[f]) < mean) m.set(f);
    }
    if (m.empty()) {
      m.set(static_cast<std::size_t>(std::min_element(frequency_.begin(), frequency_.end()) -
                                     frequency_.begin()));
    }
    return m;
  }

 private:
  bool isTabu(const FeatureMask& m) const {
    return std::find(tabu_.begin(), tabu_.end(), m) != tabu_.end();
  }

  void accept(const FeatureMask& m, double value) {
    tabu_.push_back(m);
    if (tabu_.size() > static_cast<std::size_t>(cfg_.tabu_size)) tabu_.pop_front();
    for (auto f : m.indices()) ++frequency_[f];
    ctx_.tracker().offer(m, value);
  }

  // Newest first, like "4IterToLeave" ... "1IterToLeave".
  std::vector<FeatureMask> snapshot() const { return {tabu_.rbegin(), tabu_.rend()}; }

  detail::SearchContext& ctx_;
  const TabuConfig& cfg_;
  std::deque<FeatureMask> tabu_;  // oldest at the front
  std::vector<std::size_t> frequency_;
  std::size_t iter_ = 0;
};

}  // namespace

SearchResult tabuSearch(const Dataset& d, const Measure& m, const TabuConfig& cfg,
                        const SearchOptions& opts) {
  if (cfg.tabu_size < 1) throw Error(ErrorCode::Config, "tabuSearch needs tamTabuList >= 1");
  if (cfg.iter < 0 || cfg.intensification_phases < 0 || cfg.iter_per_intensification < 0 ||
      cfg.diversification_phases < 0 || cfg.iter_per_diversification < 0) {
    throw Error(ErrorCode::Config, "tabuSearch iteration and phase counts must be >= 0");
  }
  detail::SearchContext ctx(d, m, opts, "tabuSearch");
  Rng rng(cfg.seed);
  TabuRun run(ctx, cfg);
  run.stage("basic", FeatureMask::randomNonEmpty(ctx.width(), rng), cfg.iter);
  for (int p = 1; p <= cfg.intensification_phases; ++p) {
    ctx.log("TS | Intensification stage  " + std::to_string(p));
    run.stage("intensification" + std::to_string(p), ctx.tracker().masks().front(),
              cfg.iter_per_intensification);
  }
  for (int p = 1; p <= cfg.diversification_phases; ++p) {
    ctx.log("TS | Diversification stage  " + std::to_string(p));
    run.stage("diversification" + std::to_string(p), run.leastFrequent(), cfg.iter_per_diversification);
  }
  return ctx.finish();
}

}  // namespace fsel
