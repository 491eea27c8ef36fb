#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcembed/admiss.hpp"
#include "lcembed/cohn.hpp"
#include "lcembed/inner.hpp"
#include "lcembed/measure.hpp"
#include "lcembed/operators.hpp"
#include "lcembed/zen.hpp"

namespace lcembed::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// All parsers throw InputError with the offending field named.
measure::PositiveMeasure measure_from_json(const json& j);
ojson measure_to_json(const measure::PositiveMeasure& mu);

// Accepts "hardy" | "bergman" | "power:<alpha>" or an explicit object.
zen::ZenBase zen_base_from_json(const json& j);
ojson zen_base_to_json(const zen::ZenBase& base);

inner::InnerFunction inner_from_json(const json& j);
ojson inner_to_json(const inner::InnerFunction& theta);

admiss::DiagonalSystem system_from_json(const json& j);
ojson system_to_json(const admiss::DiagonalSystem& sys);

ojson criterion_report_to_json(const cohn::CriterionReport& rep);

struct Analysis {
  std::string kind;
  json params;  // analysis-specific options, already validated
};

struct JobConfig {
  std::optional<measure::PositiveMeasure> mu;
  std::optional<inner::InnerFunction> theta;
  std::optional<zen::ZenBase> base;
  std::optional<admiss::DiagonalSystem> system;
  std::vector<Analysis> analyses;
  std::string output_path;  // from the config "output" entry; --out overrides
};

// Rejects unknown analysis kinds and analyses whose required inputs are
// absent. `config_dir` resolves relative measure file references.
JobConfig job_from_json(const json& j, const std::string& config_dir = ".");

struct RunOutcome {
  ojson report;
  int exit_code = 0;  // 0 ok, 1 analysis error, 2 hypothesis violation
  std::map<std::string, std::string> csv_tables;  // file name -> content
};

// Deterministic: fixed seeds and grid orders make the rendered report
// byte-identical across runs of the same config.
RunOutcome run_job(const JobConfig& config);

std::string render_report(const ojson& report);

std::vector<std::pair<std::string, std::string>> preset_descriptions();

}  // namespace lcembed::io
