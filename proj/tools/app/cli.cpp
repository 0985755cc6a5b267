#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "fsel/error.hpp"
#include "fsel/version.hpp"

namespace fsel::app {

using nlohmann::json;

namespace {

struct Flags {
  std::string config;
  std::string data;
  std::string class_name;
  std::string task;
  std::string measure;
  std::string search;
  std::string individual;
  std::string cutoff;
  std::vector<std::string> features;
  std::vector<std::string> categorical;
  std::vector<std::string> numeric;
  std::vector<std::string> params;
  std::vector<std::string> measure_params;
  std::vector<std::string> cutoff_params;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  bool verbose = false;
  std::string out;
};

// "key=value"; the value is read as JSON when it parses, as a string otherwise.
std::pair<std::string, json> keyValue(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorCode::Config, "expected key=value, got '" + text + "'");
  }
  const std::string value = text.substr(eq + 1);
  json parsed = json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;
  return {text.substr(0, eq), parsed};
}

// Lifts a bare component name to {"name": ...} so flag overlays merge into it.
void liftComponent(json& doc, const char* key) {
  if (doc.contains(key) && doc[key].is_string()) doc[key] = json{{"name", doc[key]}};
}

json readConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, "config '" + path + "': " + e.what());
  }
}

json overlayFrom(const Flags& f) {
  json o = json::object();
  if (!f.data.empty()) o["data"] = f.data;
  if (!f.class_name.empty()) o["class"] = f.class_name;
  if (!f.task.empty()) o["task"] = f.task;
  for (const auto& c : f.categorical) o["type_hints"][c] = "categorical";
  for (const auto& c : f.numeric) o["type_hints"][c] = "numeric";
  if (!f.measure.empty()) o["measure"]["name"] = f.measure;
  for (const auto& kv : f.measure_params) {
    auto [k, v] = keyValue(kv);
    o["measure"]["params"][k] = v;
  }
  if (!f.search.empty()) o["search"]["name"] = f.search;
  for (const auto& kv : f.params) {
    auto [k, v] = keyValue(kv);
    o["search"]["params"][k] = v;
  }
  if (!f.individual.empty()) o["individual_measure"]["name"] = f.individual;
  if (!f.cutoff.empty()) o["cutoff"]["name"] = f.cutoff;
  for (const auto& kv : f.cutoff_params) {
    auto [k, v] = keyValue(kv);
    o["cutoff"]["params"][k] = v;
  }
  if (!f.features.empty()) o["features"] = f.features;
  if (f.seed) o["seed"] = *f.seed;
  if (f.threads) o["threads"] = *f.threads;
  if (f.verbose) o["verbose"] = true;
  if (!f.out.empty()) o["out"] = f.out;
  return o;
}

void writeDocument(const json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text << std::flush;
    if (!out) throw Error(ErrorCode::Io, "cannot write result to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  file.close();
  if (!file) throw Error(ErrorCode::Io, "cannot write result to '" + path + "'");
}

void addCommonOptions(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config, "JSON configuration file; flags override its values");
  sub.add_option("--data", f.data, "CSV dataset with a header row");
  sub.add_option("--class", f.class_name, "Name of the class column");
  sub.add_option("--task", f.task, "Override the inferred task")->check(CLI::IsMember({"classification", "regression"}));
  sub.add_option("--categorical", f.categorical, "Treat these columns as categorical")->delimiter(',');
  sub.add_option("--numeric", f.numeric, "Treat these columns as numeric")->delimiter(',');
  sub.add_option("--measure", f.measure, "Measure name, or 'wrapper' (details in --config)");
  sub.add_option("--measure-param", f.measure_params, "Measure parameter key=value (repeatable)");
  sub.add_option("--seed", f.seed, "Top-level random seed");
  sub.add_option("--threads", f.threads, "Worker threads for measure evaluation")->check(CLI::PositiveNumber);
  sub.add_flag("--verbose,-v", f.verbose, "Stream progress lines to standard error");
  sub.add_option("--out,-o", f.out, "Write the result document here instead of standard output");
}

}  // namespace

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feature subset selection with filter and wrapper measures", "fsel"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Flags f;

  auto* search = app.add_subcommand("search", "Search for the best feature subset");
  addCommonOptions(*search, f);
  search->add_option("--search", f.search, "Search strategy (bfs, dfs, sfs, sbs, sffs, sfbs, hc, ts, ga, sa, lvw, lcc)");
  search->add_option("--param,-p", f.params, "Search parameter key=value (repeatable)");
  search->add_option("--individual", f.individual, "Individual measure used by lcc to order features");

  auto* evaluate = app.add_subcommand("evaluate", "Score one explicit feature subset");
  addCommonOptions(*evaluate, f);
  evaluate->add_option("--features", f.features, "Comma-separated feature names")->delimiter(',');

  auto* rank = app.add_subcommand("rank", "Rank features and optionally apply a cutoff");
  addCommonOptions(*rank, f);
  rank->add_option("--individual", f.individual, "Measure used for ranking (defaults to --measure)");
  rank->add_option("--cutoff", f.cutoff, "Cutoff: selectKBest, selectPercentile, selectThreshold, ...");
  rank->add_option("--cutoff-param", f.cutoff_params, "Cutoff parameter key=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e_out;
    const int code = app.exit(e, o, e_out);
    out << o.str();
    err << e_out.str();
    return code == 0 ? 0 : 2;
  }

  const Command command = search->parsed() ? Command::Search : evaluate->parsed() ? Command::Evaluate : Command::Rank;

  RunConfig cfg;
  try {
    json doc = f.config.empty() ? json::object() : readConfigFile(f.config);
    if (!doc.is_object()) throw Error(ErrorCode::Config, "configuration must be a JSON object");
    for (const char* key : {"measure", "search", "individual_measure", "cutoff"}) liftComponent(doc, key);
    mergeJson(doc, overlayFrom(f));
    cfg = RunConfig::fromJson(doc);
    validate(cfg, command);
  } catch (const std::exception& e) {
    err << "fsel: " << e.what() << "\n";
    return 2;
  }

  LogSink log = [&err](std::string_view line) { err << line << "\n" << std::flush; };
  try {
    const json doc = runCommand(command, cfg, log);
    writeDocument(doc, cfg.out, out);
    return 0;
  } catch (const RunFailure& e) {
    err << "fsel: " << e.what() << "\n";
    try {
      writeDocument(e.partial(), cfg.out, out);
    } catch (const std::exception& w) {
      err << "fsel: " << w.what() << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    err << "fsel: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fsel::app
