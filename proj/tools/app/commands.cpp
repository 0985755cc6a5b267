#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <mutex>

#include "fsel/cutoff.hpp"
#include "fsel/error.hpp"
#include "fsel/random.hpp"
#include "fsel/search.hpp"
#include "fsel/version.hpp"
#include "fsel/wrapper.hpp"
#include "params.hpp"

namespace fsel::app {

using nlohmann::json;

namespace {

json maskJson(const Dataset& d, const FeatureMask& m) {
  json bits = json::array();
  for (std::size_t i = 0; i < m.width(); ++i) bits.push_back(m.test(i) ? 1 : 0);
  return {{"bits", bits}, {"features", maskToNames(d, m)}};
}

json numberOrNull(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json traceEventJson(const Dataset& d, const TraceEvent& e) {
  json masks = json::array();
  for (const auto& m : e.masks) masks.push_back(maskJson(d, m)["bits"]);
  json values = json::array();
  for (double v : e.values) values.push_back(numberOrNull(v));
  return {{"iteration", e.iteration}, {"stage", e.stage}, {"label", e.label}, {"masks", masks}, {"values", values}};
}

// Per-run state shared by the three commands.
class Run {
 public:
  Run(Command command, const RunConfig& cfg, const LogSink& log)
      : command_(command), cfg_(cfg), log_(log), start_(std::chrono::steady_clock::now()) {
    validate(cfg, command);
  }

  const Dataset& load() {
    TypeHints hints = cfg_.type_hints;
    if (cfg_.task) {
      hints[cfg_.class_name] =
          *cfg_.task == TaskKind::Classification ? ColumnType::Categorical : ColumnType::Numeric;
    }
    data_.emplace(loadCsv(cfg_.data, cfg_.class_name, hints));
    if (cfg_.verbose && log_) {
      log_("loaded " + cfg_.data + ": " + std::to_string(data_->rowCount()) + " rows, " +
           std::to_string(data_->featureCount()) + " features, task " + std::string(toString(data_->task())));
    }
    return *data_;
  }

  MeasurePtr setMeasure() {
    if (cfg_.wrapper) {
      const auto parts = wrapperParts(*cfg_.wrapper, data_->task(), deriveSeed(cfg_.seed, RngStream::Folds));
      wrapper_ = makeWrapperEvaluator(parts.learner, parts.resampling, parts.fitting);
      return wrapper_;
    }
    return filterMeasure(*cfg_.measure);
  }

  MeasurePtr filterMeasure(const ComponentSpec& spec) const {
    return makeMeasure(spec.name, measureParams(spec.params, deriveSeed(cfg_.seed, RngStream::Relief)));
  }

  SearchOptions options() {
    SearchOptions opts;
    opts.threads = cfg_.threads;
    if (cfg_.verbose && log_) opts.log = log_;
    opts.observe = [this](const TraceEvent& e) {
      std::lock_guard lock(mutex_);
      partial_.push_back(e);
    };
    return opts;
  }

  std::uint64_t searchSeed() const { return deriveSeed(cfg_.seed, RngStream::Search); }

  json document(const SearchResult& r) const {
    json doc = header();
    json masks = json::array();
    for (const auto& m : r.best_masks) masks.push_back(maskJson(*data_, m));
    doc["best_masks"] = masks;
    doc["best_value"] = numberOrNull(r.best_value);
    doc["evaluations"] = r.evaluations;
    doc["empty_selection"] = r.empty_selection;
    json trace = json::array();
    for (const auto& e : r.trace) trace.push_back(traceEventJson(*data_, e));
    if (wrapper_) {
      // k larger than a fold's training split is clamped; say how often.
      const auto clamped = wrapper_->clampedFits();
      doc["clamped_fits"] = clamped;
      if (clamped > 0) {
        const std::size_t last = r.trace.empty() ? 0 : r.trace.back().iteration;
        trace.push_back(traceEventJson(*data_, {last, "wrapper", "clampedFits", {}, {static_cast<double>(clamped)}}));
      }
    }
    doc["trace"] = trace;
    doc["wall_time_seconds"] = elapsed();
    return doc;
  }

  // Wraps a failure after the data was touched into a partial document.
  [[noreturn]] void fail(const std::exception& e) const {
    json doc = header();
    json error = {{"message", e.what()}};
    if (const auto* fe = dynamic_cast<const Error*>(&e)) error["code"] = std::string(toString(fe->code()));
    doc["error"] = error;
    json trace = json::array();
    if (data_) {
      std::lock_guard lock(mutex_);
      for (const auto& ev : partial_) trace.push_back(traceEventJson(*data_, ev));
    }
    doc["trace"] = trace;
    doc["wall_time_seconds"] = elapsed();
    throw RunFailure(e.what(), std::move(doc));
  }

 private:
  json header() const {
    json doc = json::object();
    doc["version"] = kVersion;
    doc["command"] = std::string(toString(command_));
    doc["config"] = cfg_.toJson();
    doc["seed"] = cfg_.seed;
    if (data_) {
      doc["task"] = std::string(toString(data_->task()));
      doc["features"] = data_->featureNames();
    }
    return doc;
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  Command command_;
  const RunConfig& cfg_;
  const LogSink& log_;
  std::chrono::steady_clock::time_point start_;
  std::optional<Dataset> data_;
  std::shared_ptr<const WrapperEvaluator> wrapper_;
  mutable std::mutex mutex_;
  std::vector<TraceEvent> partial_;
};

SearchResult dispatchSearch(Run& run, const RunConfig& cfg, const Dataset& d) {
  const auto name = canonicalSearchName(cfg.search->name);
  const auto& params = cfg.search->params;
  const auto measure = run.setMeasure();
  const auto opts = run.options();
  const auto seed = run.searchSeed();
  if (name == "bfs") return exhaustiveBFS(d, *measure, exhaustiveConfig(params), opts);
  if (name == "dfs") return exhaustiveDFS(d, *measure, exhaustiveConfig(params), opts);
  if (name == "sfs") return sfs(d, *measure, opts);
  if (name == "sbs") return sbs(d, *measure, opts);
  if (name == "sffs") return sffs(d, *measure, opts);
  if (name == "sfbs") return sfbs(d, *measure, opts);
  if (name == "hc") return hillClimbing(d, *measure, hillClimbingConfig(params, seed), opts);
  if (name == "ts") return tabuSearch(d, *measure, tabuConfig(params, seed), opts);
  if (name == "ga") return geneticAlgorithm(d, *measure, gaConfig(params, seed), opts);
  if (name == "sa") return simulatedAnnealing(d, *measure, saConfig(params, seed), opts);
  if (name == "lvw") return lasVegasWrapper(d, *measure, lvwConfig(params, seed), opts);
  const auto individual = run.filterMeasure(*cfg.individual);
  return lcc(d, *measure, *individual, lccConfig(params), opts);
}

SearchResult dispatchCutoff(const ComponentSpec& spec, const Dataset& d, const Measure& m) {
  const auto name = canonicalCutoffName(spec.name);
  const auto& p = spec.params;
  if (name == "selectKBest") return selectKBest(d, m, p.at("k").get<std::size_t>());
  if (name == "selectPercentile") return selectPercentile(d, m, p.at("percentile").get<double>());
  if (name == "selectThreshold") return selectThreshold(d, m, p.at("threshold").get<double>());
  if (name == "selectThresholdRange") {
    return selectThresholdRange(d, m, p.at("lo").get<double>(), p.at("hi").get<double>());
  }
  if (name == "selectDifference") return selectDifference(d, m, p.at("d").get<double>());
  return selectSlope(d, m, p.at("s").get<double>());
}

}  // namespace

json cmdSearch(const RunConfig& cfg, const LogSink& log) {
  Run run(Command::Search, cfg, log);
  const Dataset& d = run.load();
  try {
    return run.document(dispatchSearch(run, cfg, d));
  } catch (const std::exception& e) {
    run.fail(e);
  }
}

json cmdEvaluate(const RunConfig& cfg, const LogSink& log) {
  Run run(Command::Evaluate, cfg, log);
  const Dataset& d = run.load();
  const FeatureMask mask = namesToMask(d, cfg.features);
  try {
    const auto measure = run.setMeasure();
    requireSetMeasure(*measure, "evaluate");
    const double value = measure->bind(d)(mask);
    SearchResult r;
    r.best_masks = {mask};
    r.best_value = value;
    r.evaluations = 1;
    r.trace.push_back({0, "evaluate", "evaluation", {mask}, {value}});
    if (cfg.verbose && log) log("EVAL | Vector=" + mask.toString() + " | Fitness=" + std::to_string(value));
    return run.document(r);
  } catch (const std::exception& e) {
    run.fail(e);
  }
}

json cmdRank(const RunConfig& cfg, const LogSink& log) {
  Run run(Command::Rank, cfg, log);
  const Dataset& d = run.load();
  try {
    const auto measure = run.filterMeasure(cfg.individual ? *cfg.individual : *cfg.measure);
    const RankedScores ranked = rankFeatures(d, *measure);
    SearchResult r;
    if (cfg.cutoff) {
      r = dispatchCutoff(*cfg.cutoff, d, *measure);
    } else {
      r.best_value = std::numeric_limits<double>::quiet_NaN();
      r.evaluations = ranked.entries.size();
    }
    json doc = run.document(r);
    json ranking = json::array();
    for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
      const auto& e = ranked.entries[i];
      ranking.push_back({{"rank", i + 1}, {"feature", e.feature}, {"index", e.index}, {"score", numberOrNull(e.score)}});
      if (cfg.verbose && log) log("RANK | " + std::to_string(i + 1) + " | " + e.feature + " | " + std::to_string(e.score));
    }
    doc["ranking"] = ranking;
    doc["maximize"] = measure->descriptor().maximize;
    return doc;
  } catch (const std::exception& e) {
    run.fail(e);
  }
}

json runCommand(Command command, const RunConfig& cfg, const LogSink& log) {
  switch (command) {
    case Command::Search: return cmdSearch(cfg, log);
    case Command::Evaluate: return cmdEvaluate(cfg, log);
    case Command::Rank: return cmdRank(cfg, log);
  }
  throw Error(ErrorCode::Config, "unknown command");
}

json withoutTiming(json doc) {
  doc.erase("wall_time_seconds");
  return doc;
}

}  // namespace fsel::app
