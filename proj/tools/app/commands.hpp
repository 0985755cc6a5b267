#pragma once

#include <functional>
#include <string_view>

#include <json.hpp>

#include "run_config.hpp"

namespace fsel::app {

using LogSink = std::function<void(std::string_view)>;

// Each command returns the ResultDocument as JSON. Errors are thrown as
// fsel::Error; a mid-run failure is rethrown as RunFailure carrying the
// partial trace.
nlohmann::json cmdSearch(const RunConfig& cfg, const LogSink& log = {});
nlohmann::json cmdEvaluate(const RunConfig& cfg, const LogSink& log = {});
nlohmann::json cmdRank(const RunConfig& cfg, const LogSink& log = {});
nlohmann::json runCommand(Command command, const RunConfig& cfg, const LogSink& log = {});

class RunFailure : public std::runtime_error {
 public:
  RunFailure(const std::string& message, nlohmann::json partial)
      : std::runtime_error(message), partial_(std::move(partial)) {}
  const nlohmann::json& partial() const noexcept { return partial_; }

 private:
  nlohmann::json partial_;
};

// Document with wall time removed, for replay comparisons.
nlohmann::json withoutTiming(nlohmann::json doc);

}  // namespace fsel::app
