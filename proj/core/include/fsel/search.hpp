#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsel/dataset.hpp"
#include "fsel/feature_mask.hpp"
#include "fsel/measures.hpp"

namespace fsel {

struct TraceEvent {
  std::size_t iteration = 0;  // non-decreasing over a whole run
  std::string stage;          // e.g. "basic", "intensification1"
  std::string label;          // e.g. "bestNeighbor", "tabuList", "population"
  std::vector<FeatureMask> masks;
  std::vector<double> values;
};

struct SearchResult {
  std::vector<FeatureMask> best_masks;
  double best_value = 0.0;
  std::vector<TraceEvent> trace;
  std::size_t evaluations = 0;
  // Set by cutoff selections that select nothing; best_masks then holds a
  // single all-zero mask and best_value is NaN.
  bool empty_selection = false;
};

// Execution knobs shared by every search. None of them changes results.
struct SearchOptions {
  // Worker threads for batches of measure evaluations.
  std::size_t threads = 1;
  // Human-readable progress lines ("TS | Iter=1 | ...").
  std::function<void(std::string_view)> log;
  // Called for each trace event as it is recorded.
  std::function<void(const TraceEvent&)> observe;
};

// ---------------------------------------------------------------------------
// Configurations

struct ExhaustiveConfig {
  std::size_t max_features = 20;
};

struct HillClimbingConfig {
  int restarts = 1;
  std::uint64_t seed = 0;
};

struct TabuConfig {
  int iter = 100;
  int tabu_size = 5;
  int intensification_phases = 0;
  int iter_per_intensification = 0;
  int diversification_phases = 0;
  int iter_per_diversification = 0;
  std::uint64_t seed = 0;
};

struct GAConfig {
  int pop_size = 20;
  double p_crossover = 0.8;
  double p_mutation = 0.1;
  int max_iter = 100;
  int elitism = 1;
  std::uint64_t seed = 0;
};

struct SAConfig {
  double t0 = 1.0;
  double alpha = 0.9;
  int inner_iter = 10;
  double t_min = 1e-3;
  std::uint64_t seed = 0;
};

struct LVWConfig {
  int max_stale_iter = 100;
  std::uint64_t seed = 0;
};

struct LccConfig {
  std::optional<double> threshold;
};

// ---------------------------------------------------------------------------
// Set searches. Each requires a set measure and compares under its maximize
// flag. The empty mask is never evaluated.

SearchResult exhaustiveBFS(const Dataset& d, const Measure& m, const ExhaustiveConfig& cfg = {},
                           const SearchOptions& opts = {});
SearchResult exhaustiveDFS(const Dataset& d, const Measure& m, const ExhaustiveConfig& cfg = {},
                           const SearchOptions& opts = {});
SearchResult sfs(const Dataset& d, const Measure& m, const SearchOptions& opts = {});
SearchResult sbs(const Dataset& d, const Measure& m, const SearchOptions& opts = {});
SearchResult sffs(const Dataset& d, const Measure& m, const SearchOptions& opts = {});
SearchResult sfbs(const Dataset& d, const Measure& m, const SearchOptions& opts = {});
SearchResult hillClimbing(const Dataset& d, const Measure& m, const HillClimbingConfig& cfg = {},
                          const SearchOptions& opts = {});
SearchResult tabuSearch(const Dataset& d, const Measure& m, const TabuConfig& cfg = {},
                        const SearchOptions& opts = {});
SearchResult geneticAlgorithm(const Dataset& d, const Measure& m, const GAConfig& cfg = {},
                              const SearchOptions& opts = {});
SearchResult simulatedAnnealing(const Dataset& d, const Measure& m, const SAConfig& cfg = {},
                                const SearchOptions& opts = {});
SearchResult lasVegasWrapper(const Dataset& d, const Measure& m, const LVWConfig& cfg = {},
                             const SearchOptions& opts = {});

// Hybrid: ranks features with `individual` (any measure kind), then prunes
// from the least relevant while `set_measure` stays at or above threshold.
SearchResult lcc(const Dataset& d, const Measure& set_measure, const Measure& individual,
                 const LccConfig& cfg = {}, const SearchOptions& opts = {});

// Metropolis acceptance probability for a move of signed improvement delta.
double annealingAcceptance(double delta, double temperature) noexcept;

}  // namespace fsel
