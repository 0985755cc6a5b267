#include "run_config.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fsel/error.hpp"
#include "fsel/measures.hpp"
#include "params.hpp"

namespace fsel::app {

using nlohmann::json;

std::string_view toString(Command c) noexcept {
  switch (c) {
    case Command::Search: return "search";
    case Command::Evaluate: return "evaluate";
    case Command::Rank: return "rank";
  }
  return "unknown";
}

namespace {

[[noreturn]] void configError(const std::string& msg) { throw Error(ErrorCode::Config, msg); }

ComponentSpec componentFrom(const json& j, const char* key) {
  ComponentSpec spec;
  if (j.is_string()) {
    spec.name = j.get<std::string>();
    return spec;
  }
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string()) {
    configError(std::string("'") + key + "' must be a name or an object with a 'name'");
  }
  spec.name = j["name"].get<std::string>();
  if (j.contains("params")) {
    if (!j["params"].is_object()) configError(std::string("'") + key + ".params' must be an object");
    spec.params = j["params"];
  }
  for (const auto& [k, v] : j.items()) {
    if (k != "name" && k != "params" && !(spec.name == "wrapper" && std::string(key) == "measure")) {
      configError(std::string("unknown key '") + k + "' in '" + key + "'");
    }
  }
  return spec;
}

json componentJson(const ComponentSpec& spec) { return {{"name", spec.name}, {"params", spec.params}}; }

const std::map<std::string, std::string>& searchAliases() {
  static const std::map<std::string, std::string> table = {
      {"bfs", "bfs"},   {"breadthFirst", "bfs"},     {"exhaustiveBFS", "bfs"},
      {"dfs", "dfs"},   {"deepFirst", "dfs"},        {"exhaustiveDFS", "dfs"},
      {"sfs", "sfs"},   {"sequentialForwardSelection", "sfs"},
      {"sbs", "sbs"},   {"sequentialBackwardSelection", "sbs"},
      {"sffs", "sffs"}, {"sequentialFloatingForwardSelection", "sffs"},
      {"sfbs", "sfbs"}, {"sequentialFloatingBackwardSelection", "sfbs"},
      {"hc", "hc"},     {"hillClimbing", "hc"},
      {"ts", "ts"},     {"tabu", "ts"},              {"tabuSearch", "ts"},
      {"ga", "ga"},     {"geneticAlgorithm", "ga"},
      {"sa", "sa"},     {"simulatedAnnealing", "sa"},
      {"lvw", "lvw"},   {"LasVegas", "lvw"},         {"lasVegasWrapper", "lvw"},
      {"lcc", "lcc"},   {"LCC", "lcc"},
  };
  return table;
}

const std::map<std::string, std::string>& cutoffAliases() {
  static const std::map<std::string, std::string> table = {
      {"selectKBest", "selectKBest"},
      {"selectPercentile", "selectPercentile"},
      {"selectThreshold", "selectThreshold"},
      {"selectThresholdRange", "selectThresholdRange"},
      {"selectDifference", "selectDifference"},
      {"selectSlope", "selectSlope"},
  };
  return table;
}

}  // namespace

std::string canonicalSearchName(const std::string& name) {
  auto it = searchAliases().find(name);
  if (it == searchAliases().end()) configError("unknown search '" + name + "'");
  return it->second;
}

std::string canonicalCutoffName(const std::string& name) {
  auto it = cutoffAliases().find(name);
  if (it == cutoffAliases().end()) configError("unknown cutoff '" + name + "'");
  return it->second;
}

std::vector<std::string> searchNames() {
  return {"bfs", "dfs", "sfs", "sbs", "sffs", "sfbs", "hc", "ts", "ga", "sa", "lvw", "lcc"};
}

std::vector<std::string> cutoffNames() {
  std::vector<std::string> out;
  for (const auto& [k, v] : cutoffAliases()) out.push_back(v);
  return out;
}

void mergeJson(json& base, const json& overlay) {
  if (!base.is_object() || !overlay.is_object()) {
    base = overlay;
    return;
  }
  for (const auto& [k, v] : overlay.items()) {
    if (v.is_object() && base.contains(k) && base[k].is_object()) {
      mergeJson(base[k], v);
    } else {
      base[k] = v;
    }
  }
}

RunConfig RunConfig::fromJson(const json& j) {
  if (!j.is_object()) configError("configuration must be a JSON object");
  static const std::set<std::string> known = {
      "data", "class", "type_hints", "task", "measure", "search", "individual_measure",
      "cutoff", "features", "seed", "verbose", "threads", "out"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) configError("unknown configuration key '" + k + "'");
  }
  RunConfig cfg;
  try {
    if (j.contains("data")) cfg.data = j.at("data").get<std::string>();
    if (j.contains("class")) cfg.class_name = j.at("class").get<std::string>();
    if (j.contains("type_hints")) {
      for (const auto& [col, type] : j.at("type_hints").items()) {
        const auto t = type.get<std::string>();
        if (t == "categorical") {
          cfg.type_hints[col] = ColumnType::Categorical;
        } else if (t == "numeric") {
          cfg.type_hints[col] = ColumnType::Numeric;
        } else {
          configError("type hint for '" + col + "' must be 'categorical' or 'numeric'");
        }
      }
    }
    if (j.contains("task") && !j.at("task").is_null()) {
      const auto t = j.at("task").get<std::string>();
      if (t == "classification") {
        cfg.task = TaskKind::Classification;
      } else if (t == "regression") {
        cfg.task = TaskKind::Regression;
      } else {
        configError("task must be 'classification' or 'regression'");
      }
    }
    if (j.contains("measure")) {
      cfg.measure = componentFrom(j.at("measure"), "measure");
      if (cfg.measure->name == "wrapper") {
        WrapperSpec w;
        const auto& m = j.at("measure");
        if (m.is_object()) {
          for (const auto& [k, v] : m.items()) {
            if (k != "name" && k != "learner" && k != "resampling" && k != "fitting") {
              configError("unknown key '" + k + "' in wrapper measure");
            }
          }
          if (m.contains("learner")) w.learner = m.at("learner").get<std::string>();
          if (m.contains("resampling")) w.resampling = m.at("resampling");
          if (m.contains("fitting")) w.fitting = m.at("fitting");
        }
        cfg.wrapper = w;
      }
    }
    if (j.contains("search")) cfg.search = componentFrom(j.at("search"), "search");
    if (j.contains("individual_measure")) {
      cfg.individual = componentFrom(j.at("individual_measure"), "individual_measure");
    }
    if (j.contains("cutoff")) cfg.cutoff = componentFrom(j.at("cutoff"), "cutoff");
    if (j.contains("features")) cfg.features = j.at("features").get<std::vector<std::string>>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("verbose")) cfg.verbose = j.at("verbose").get<bool>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<std::size_t>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  } catch (const json::exception& e) {
    configError(std::string("malformed configuration: ") + e.what());
  }
  return cfg;
}

json RunConfig::toJson() const {
  json j = json::object();
  j["data"] = data;
  j["class"] = class_name;
  json hints = json::object();
  for (const auto& [col, type] : type_hints) {
    hints[col] = type == ColumnType::Categorical ? "categorical" : "numeric";
  }
  j["type_hints"] = hints;
  j["task"] = task ? json(std::string(fsel::toString(*task))) : json(nullptr);
  if (measure) {
    if (wrapper) {
      j["measure"] = {{"name", "wrapper"},
                      {"learner", wrapper->learner},
                      {"resampling", wrapper->resampling},
                      {"fitting", wrapper->fitting}};
    } else {
      j["measure"] = componentJson(*measure);
    }
  }
  if (search) j["search"] = componentJson(*search);
  if (individual) j["individual_measure"] = componentJson(*individual);
  if (cutoff) j["cutoff"] = componentJson(*cutoff);
  if (!features.empty()) j["features"] = features;
  j["seed"] = seed;
  return j;
}

void validate(const RunConfig& cfg, Command command) {
  if (cfg.data.empty()) configError("no dataset given (--data)");
  if (cfg.class_name.empty()) configError("no class column given (--class)");
  if (cfg.threads < 1) configError("threads must be >= 1");

  auto checkSetMeasure = [&](const char* role) {
    if (!cfg.measure) configError(std::string(role) + " needs a measure (--measure)");
    if (cfg.wrapper) {
      checkWrapperSpec(*cfg.wrapper);
      return;
    }
    const auto m = makeMeasure(cfg.measure->name, measureParams(cfg.measure->params, cfg.seed));
    if (m->kind() != MeasureKind::Set) {
      configError(std::string(role) + " needs a set measure, but '" + m->name() +
                  "' is an individual measure");
    }
  };
  auto checkIndividual = [&](const ComponentSpec& spec) {
    if (spec.name == "wrapper") configError("the wrapper measure cannot rank individual features here");
    makeMeasure(spec.name, measureParams(spec.params, cfg.seed));
  };

  switch (command) {
    case Command::Search: {
      if (!cfg.search) configError("search needs a search strategy (--search)");
      const auto name = canonicalSearchName(cfg.search->name);
      checkSearchParams(name, cfg.search->params);
      checkSetMeasure("search");
      if (name == "lcc") {
        if (!cfg.individual) configError("lcc needs an individual measure (--individual)");
        checkIndividual(*cfg.individual);
      }
      break;
    }
    case Command::Evaluate:
      checkSetMeasure("evaluate");
      if (cfg.features.empty()) configError("evaluate needs a non-empty feature list (--features)");
      break;
    case Command::Rank: {
      const ComponentSpec* spec = cfg.individual ? &*cfg.individual : cfg.measure ? &*cfg.measure : nullptr;
      if (!spec) configError("rank needs a measure (--measure or --individual)");
      checkIndividual(*spec);
      if (cfg.cutoff) checkCutoffParams(canonicalCutoffName(cfg.cutoff->name), cfg.cutoff->params);
      break;
    }
  }
}

}  // namespace fsel::app
