#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsel/dataset.hpp"

namespace fsel::app {

enum class Command { Search, Evaluate, Rank };

std::string_view toString(Command c) noexcept;

// Named component with free-form parameters, e.g. {"name": "ga",
// "params": {"popSize": 10}}.
struct ComponentSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
};

struct WrapperSpec {
  std::string learner = "knn";
  nlohmann::json resampling = nlohmann::json::object();
  nlohmann::json fitting = nlohmann::json::object();
};

struct RunConfig {
  std::string data;
  std::string class_name;
  TypeHints type_hints;
  std::optional<TaskKind> task;
  std::optional<ComponentSpec> measure;
  std::optional<WrapperSpec> wrapper;  // set when measure.name == "wrapper"
  std::optional<ComponentSpec> search;
  std::optional<ComponentSpec> individual;
  std::optional<ComponentSpec> cutoff;
  std::vector<std::string> features;
  std::uint64_t seed = 0;
  bool verbose = false;
  std::size_t threads = 1;
  std::string out;

  static RunConfig fromJson(const nlohmann::json& j);
  // Result-relevant fields only; execution knobs (threads, verbose, out)
  // are left out so documents compare equal across them.
  nlohmann::json toJson() const;
};

// Merges `overlay` into `base`; objects merge recursively, everything else
// is replaced.
void mergeJson(nlohmann::json& base, const nlohmann::json& overlay);

// Checks names, parameters and kind compatibility without touching data.
void validate(const RunConfig& cfg, Command command);

// Canonical search/cutoff names; aliases map onto these.
std::string canonicalSearchName(const std::string& name);
std::string canonicalCutoffName(const std::string& name);
std::vector<std::string> searchNames();
std::vector<std::string> cutoffNames();

}  // namespace fsel::app
