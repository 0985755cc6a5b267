#include "params.hpp"

#include <cmath>
#include <initializer_list>
#include <set>

#include "fsel/error.hpp"

namespace fsel::app {

using nlohmann::json;

namespace {

[[noreturn]] void configError(const std::string& msg) { throw Error(ErrorCode::Config, msg); }

void allowKeys(const json& params, const std::string& owner, std::initializer_list<const char*> keys) {
  if (params.is_null()) return;
  if (!params.is_object()) configError("parameters of '" + owner + "' must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : params.items()) {
    if (!allowed.count(k)) configError("unknown parameter '" + k + "' for '" + owner + "'");
  }
}

const json* find(const json& params, const char* key) {
  if (!params.is_object()) return nullptr;
  auto it = params.find(key);
  return it == params.end() ? nullptr : &*it;
}

int intParam(const json& params, const char* key, int fallback, const std::string& owner, int min_value) {
  const json* v = find(params, key);
  if (!v) return fallback;
  if (!v->is_number_integer() && !(v->is_number_float() && std::floor(v->get<double>()) == v->get<double>())) {
    configError("parameter '" + std::string(key) + "' of '" + owner + "' must be an integer");
  }
  const auto value = v->get<long long>();
  if (value < min_value) {
    configError("parameter '" + std::string(key) + "' of '" + owner + "' must be >= " + std::to_string(min_value));
  }
  return static_cast<int>(value);
}

double numberParam(const json& params, const char* key, double fallback, const std::string& owner) {
  const json* v = find(params, key);
  if (!v) return fallback;
  if (!v->is_number()) configError("parameter '" + std::string(key) + "' of '" + owner + "' must be a number");
  return v->get<double>();
}

bool boolParam(const json& params, const char* key, bool fallback, const std::string& owner) {
  const json* v = find(params, key);
  if (!v) return fallback;
  if (!v->is_boolean()) configError("parameter '" + std::string(key) + "' of '" + owner + "' must be a boolean");
  return v->get<bool>();
}

double probability(const json& params, const char* key, double fallback, const std::string& owner) {
  const double p = numberParam(params, key, fallback, owner);
  if (!(p >= 0.0 && p <= 1.0)) configError("parameter '" + std::string(key) + "' of '" + owner + "' must lie in [0, 1]");
  return p;
}

double positive(const json& params, const char* key, double fallback, const std::string& owner) {
  const double v = numberParam(params, key, fallback, owner);
  if (!(v > 0.0)) configError("parameter '" + std::string(key) + "' of '" + owner + "' must be > 0");
  return v;
}

}  // namespace

MeasureParams measureParams(const json& params, std::uint64_t relief_seed) {
  allowKeys(params, "measure", {"bins", "neighbors", "sample"});
  MeasureParams out;
  out.discretization.bins = intParam(params, "bins", out.discretization.bins, "measure", 2);
  out.relief.neighbors = intParam(params, "neighbors", out.relief.neighbors, "measure", 1);
  if (find(params, "sample")) out.relief.sample = static_cast<std::size_t>(intParam(params, "sample", 1, "measure", 1));
  out.relief.seed = relief_seed;
  return out;
}

namespace {

LearnerAlgorithm learnerAlgorithm(const std::string& name) {
  if (name == "knn") return LearnerAlgorithm::Knn;
  if (name == "zero" || name == "null" || name == "zero-baseline") return LearnerAlgorithm::ZeroBaseline;
  configError("unknown learner '" + name + "' (expected knn or zero-baseline)");
}

std::vector<HyperAssignment> tuneGrid(const json& grid, LearnerAlgorithm algo) {
  allowKeys(grid, "tuneGrid", {"k"});
  if (algo == LearnerAlgorithm::ZeroBaseline) {
    if (grid.is_object() && !grid.empty()) configError("the zero-baseline learner takes no tuning grid");
    return {HyperAssignment{}};
  }
  const json* k = find(grid, "k");
  if (!k) return knnGrid(1, 20);
  std::vector<HyperAssignment> out;
  if (k->is_array()) {
    for (const auto& v : *k) {
      if (!v.is_number_integer() || v.get<long long>() < 1) configError("tuneGrid.k entries must be integers >= 1");
      out.push_back({{"k", v.get<double>()}});
    }
  } else if (k->is_object()) {
    allowKeys(*k, "tuneGrid.k", {"from", "to"});
    const int from = intParam(*k, "from", 1, "tuneGrid.k", 1);
    const int to = intParam(*k, "to", 20, "tuneGrid.k", 1);
    if (to < from) configError("tuneGrid.k: 'to' is below 'from'");
    out = knnGrid(from, to);
  } else if (k->is_number_integer()) {
    if (k->get<long long>() < 1) configError("tuneGrid.k must be >= 1");
    out.push_back({{"k", k->get<double>()}});
  } else {
    configError("tuneGrid.k must be an integer, a list or {from, to}");
  }
  if (out.empty()) configError("tuneGrid is empty");
  return out;
}

}  // namespace

WrapperParts wrapperParts(const WrapperSpec& spec, TaskKind task, std::uint64_t fold_seed) {
  WrapperParts parts;
  parts.learner.algorithm = learnerAlgorithm(spec.learner);
  parts.learner.task = task;

  allowKeys(spec.resampling, "resampling", {"method", "number", "stratified"});
  if (const json* method = find(spec.resampling, "method")) {
    if (!method->is_string() || method->get<std::string>() != "cv") {
      configError("resampling method must be \"cv\"");
    }
  }
  parts.resampling.folds = intParam(spec.resampling, "number", 10, "resampling", 2);
  parts.resampling.stratified = boolParam(spec.resampling, "stratified", true, "resampling");
  parts.resampling.seed = fold_seed;

  allowKeys(spec.fitting, "fitting", {"preProc", "metric", "tuneGrid"});
  if (const json* pre = find(spec.fitting, "preProc")) {
    if (!pre->is_array()) configError("fitting.preProc must be a list");
    for (const auto& step : *pre) {
      const auto s = step.is_string() ? step.get<std::string>() : std::string();
      if (s == "center") {
        parts.fitting.center = true;
      } else if (s == "scale") {
        parts.fitting.scale = true;
      } else {
        configError("fitting.preProc accepts \"center\" and \"scale\"");
      }
    }
  }
  parts.fitting.metric = task == TaskKind::Classification ? Metric::Accuracy : Metric::Rmse;
  if (const json* metric = find(spec.fitting, "metric")) {
    const auto s = metric->is_string() ? metric->get<std::string>() : std::string();
    if (s == "Accuracy") {
      parts.fitting.metric = Metric::Accuracy;
    } else if (s == "RMSE") {
      parts.fitting.metric = Metric::Rmse;
    } else {
      configError("fitting.metric must be \"Accuracy\" or \"RMSE\"");
    }
  }
  const json grid = spec.fitting.is_object() && spec.fitting.contains("tuneGrid") ? spec.fitting["tuneGrid"]
                                                                                 : json::object();
  parts.fitting.grid = tuneGrid(grid, parts.learner.algorithm);
  return parts;
}

void checkWrapperSpec(const WrapperSpec& spec) {
  // The task is unknown before the data is read; metric/task agreement is
  // checked again once it is.
  auto parts = wrapperParts(spec, TaskKind::Classification, 0);
  (void)parts;
}

ExhaustiveConfig exhaustiveConfig(const json& params) {
  allowKeys(params, "exhaustive", {"maxFeatures"});
  ExhaustiveConfig cfg;
  cfg.max_features = static_cast<std::size_t>(intParam(params, "maxFeatures", 20, "exhaustive", 1));
  return cfg;
}

HillClimbingConfig hillClimbingConfig(const json& params, std::uint64_t seed) {
  allowKeys(params, "hc", {"restarts"});
  HillClimbingConfig cfg;
  cfg.restarts = intParam(params, "restarts", cfg.restarts, "hc", 1);
  cfg.seed = seed;
  return cfg;
}

TabuConfig tabuConfig(const json& params, std::uint64_t seed) {
  allowKeys(params, "ts", {"iter", "tamTabuList", "intensification", "iterIntensification", "diversification",
                           "iterDiversification"});
  TabuConfig cfg;
  cfg.iter = intParam(params, "iter", cfg.iter, "ts", 1);
  cfg.tabu_size = intParam(params, "tamTabuList", cfg.tabu_size, "ts", 1);
  cfg.intensification_phases = intParam(params, "intensification", 0, "ts", 0);
  cfg.iter_per_intensification = intParam(params, "iterIntensification", 0, "ts", 0);
  cfg.diversification_phases = intParam(params, "diversification", 0, "ts", 0);
  cfg.iter_per_diversification = intParam(params, "iterDiversification", 0, "ts", 0);
  cfg.seed = seed;
  return cfg;
}

GAConfig gaConfig(const json& params, std::uint64_t seed) {
  allowKeys(params, "ga", {"popSize", "pcrossover", "pmutation", "maxiter", "elitism"});
  GAConfig cfg;
  cfg.pop_size = intParam(params, "popSize", cfg.pop_size, "ga", 2);
  cfg.p_crossover = probability(params, "pcrossover", cfg.p_crossover, "ga");
  cfg.p_mutation = probability(params, "pmutation", cfg.p_mutation, "ga");
  cfg.max_iter = intParam(params, "maxiter", cfg.max_iter, "ga", 1);
  cfg.elitism = intParam(params, "elitism", cfg.elitism, "ga", 0);
  if (cfg.elitism > cfg.pop_size) configError("parameter 'elitism' of 'ga' exceeds popSize");
  cfg.seed = seed;
  return cfg;
}

SAConfig saConfig(const json& params, std::uint64_t seed) {
  allowKeys(params, "sa", {"t0", "alpha", "innerIter", "tMin"});
  SAConfig cfg;
  cfg.t0 = positive(params, "t0", cfg.t0, "sa");
  cfg.alpha = numberParam(params, "alpha", cfg.alpha, "sa");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) configError("parameter 'alpha' of 'sa' must lie in (0, 1)");
  cfg.inner_iter = intParam(params, "innerIter", cfg.inner_iter, "sa", 1);
  cfg.t_min = positive(params, "tMin", cfg.t_min, "sa");
  cfg.seed = seed;
  return cfg;
}

LVWConfig lvwConfig(const json& params, std::uint64_t seed) {
  allowKeys(params, "lvw", {"K", "maxStaleIter"});
  LVWConfig cfg;
  cfg.max_stale_iter = intParam(params, "K", cfg.max_stale_iter, "lvw", 1);
  cfg.max_stale_iter = intParam(params, "maxStaleIter", cfg.max_stale_iter, "lvw", 1);
  cfg.seed = seed;
  return cfg;
}

LccConfig lccConfig(const json& params) {
  allowKeys(params, "lcc", {"threshold"});
  LccConfig cfg;
  if (find(params, "threshold")) cfg.threshold = numberParam(params, "threshold", 0.0, "lcc");
  return cfg;
}

void checkSearchParams(const std::string& canonical, const json& params) {
  if (canonical == "bfs" || canonical == "dfs") {
    exhaustiveConfig(params);
  } else if (canonical == "sfs" || canonical == "sbs" || canonical == "sffs" || canonical == "sfbs") {
    allowKeys(params, canonical, {});
  } else if (canonical == "hc") {
    hillClimbingConfig(params, 0);
  } else if (canonical == "ts") {
    tabuConfig(params, 0);
  } else if (canonical == "ga") {
    gaConfig(params, 0);
  } else if (canonical == "sa") {
    saConfig(params, 0);
  } else if (canonical == "lvw") {
    lvwConfig(params, 0);
  } else if (canonical == "lcc") {
    lccConfig(params);
  } else {
    configError("unknown search '" + canonical + "'");
  }
}

void checkCutoffParams(const std::string& canonical, const json& params) {
  if (canonical == "selectKBest") {
    allowKeys(params, canonical, {"k"});
    intParam(params, "k", 1, canonical, 1);
    if (!find(params, "k")) configError("selectKBest needs parameter 'k'");
  } else if (canonical == "selectPercentile") {
    allowKeys(params, canonical, {"percentile"});
    const double p = numberParam(params, "percentile", -1.0, canonical);
    if (!(p > 0.0 && p <= 100.0)) configError("selectPercentile needs 'percentile' in (0, 100]");
  } else if (canonical == "selectThreshold") {
    allowKeys(params, canonical, {"threshold"});
    if (!find(params, "threshold")) configError("selectThreshold needs parameter 'threshold'");
    numberParam(params, "threshold", 0.0, canonical);
  } else if (canonical == "selectThresholdRange") {
    allowKeys(params, canonical, {"lo", "hi"});
    if (!find(params, "lo") || !find(params, "hi")) configError("selectThresholdRange needs 'lo' and 'hi'");
    if (numberParam(params, "lo", 0.0, canonical) > numberParam(params, "hi", 0.0, canonical)) {
      configError("selectThresholdRange: 'lo' exceeds 'hi'");
    }
  } else if (canonical == "selectDifference" || canonical == "selectSlope") {
    const char* key = canonical == "selectDifference" ? "d" : "s";
    allowKeys(params, canonical, {key});
    if (!find(params, key)) configError(canonical + " needs parameter '" + key + "'");
    if (numberParam(params, key, 0.0, canonical) < 0.0) configError(canonical + ": '" + key + "' must be >= 0");
  } else {
    configError("unknown cutoff '" + canonical + "'");
  }
}

}  // namespace fsel::app
