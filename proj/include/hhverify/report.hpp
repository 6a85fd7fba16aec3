#pragma once

#include <string>

#include <json.hpp>

#include "hhverify/bounds.hpp"
#include "hhverify/harness.hpp"

namespace hhv {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::json;

struct ReportOptions {
  bool per_trial = false;
  bool timestamp = false;
};

/// Config echo; the same schema is accepted back by `config_from_json`.
Json config_to_json(const TrialConfig& config);

/// Overlays the keys present in `doc` onto `base`. Unknown keys and
/// ill-typed values raise ConfigError.
TrialConfig config_from_json(const Json& doc, TrialConfig base = {});

Json trial_to_json(const TrialRecord& record);

/// {config, findings, suites, version}; wall time and a timestamp only with
/// `timestamp`.
Json batch_to_json(const TrialBatch& batch, const ReportOptions& options);

Json bound_report_to_json(const BoundReport& report);

/// Deterministic rendering: object keys in lexicographic order, two-space
/// indentation, doubles with 17 significant digits, NaN/inf as null.
std::string dump_json(const Json& value);

inline constexpr const char* kCsvHeader =
    "suite,trial,family,params,a,b,p,q,lhs,rhs,margin,hypotheses_ok,sign,status";

/// One row per trial under the fixed 14-column header.
std::string batch_to_csv(const TrialBatch& batch);

/// Header plus a single row for a one-off bound evaluation.
std::string bound_report_to_csv(const BoundReport& report, const FunctionSpec& spec);

/// printf("%.17g") with NaN/inf mapped to the empty string.
std::string format_g17(double v);

}  // namespace hhv
