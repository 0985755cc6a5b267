#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fsel/measures.hpp"
#include "fsel/search.hpp"
#include "fsel/wrapper.hpp"
#include "run_config.hpp"

namespace fsel::app {

// Parameter objects are checked strictly: unknown keys and wrong types throw
// Config. The same parsers back validation and execution.

MeasureParams measureParams(const nlohmann::json& params, std::uint64_t relief_seed);

struct WrapperParts {
  LearnerSpec learner;
  ResamplingSpec resampling;
  FitSpec fitting;
};

// `task` fills defaults that depend on it (metric).
WrapperParts wrapperParts(const WrapperSpec& spec, TaskKind task, std::uint64_t fold_seed);
void checkWrapperSpec(const WrapperSpec& spec);

void checkSearchParams(const std::string& canonical, const nlohmann::json& params);
ExhaustiveConfig exhaustiveConfig(const nlohmann::json& params);
HillClimbingConfig hillClimbingConfig(const nlohmann::json& params, std::uint64_t seed);
TabuConfig tabuConfig(const nlohmann::json& params, std::uint64_t seed);
GAConfig gaConfig(const nlohmann::json& params, std::uint64_t seed);
SAConfig saConfig(const nlohmann::json& params, std::uint64_t seed);
LVWConfig lvwConfig(const nlohmann::json& params, std::uint64_t seed);
LccConfig lccConfig(const nlohmann::json& params);

void checkCutoffParams(const std::string& canonical, const nlohmann::json& params);

}  // namespace fsel::app
