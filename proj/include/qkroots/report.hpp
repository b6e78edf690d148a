#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qk {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolkitVersion = "1.0.0";
inline constexpr const char* kReportSchemaVersion = "1";

enum class CaseStatus { kPass, kFail, kFinding };

inline const char* case_status_name(CaseStatus s) {
  switch (s) {
    case CaseStatus::kPass: return "pass";
    case CaseStatus::kFail: return "fail";
    default: return "finding";
  }
}

// One grid cell of a check: the parameters that reproduce it, the verdict,
// and whatever residual/valuation data the verdict rests on.
struct CaseRecord {
  long index = 0;
  Json parameters = Json::object();
  CaseStatus status = CaseStatus::kPass;
  Json data = Json::object();
  double runtime_ms = 0.0;
};

struct CheckResult {
  std::string check;
  std::string module;
  std::vector<std::string> tags;
  std::string status;  // pass | fail | finding
  std::vector<CaseRecord> cases;
  double runtime_ms = 0.0;
  std::string error;  // nonempty when the check could not run at all
};

struct RunReport {
  std::string schema_version = kReportSchemaVersion;
  std::string toolkit_version = kToolkitVersion;
  unsigned long long seed = 0;
  Json conventions = Json::object();
  std::vector<CheckResult> checks;
  long passes = 0;
  long failures = 0;
  long findings = 0;
  std::string status;  // pass | fail
};

Json to_json(const CaseRecord& c);
Json to_json(const CheckResult& r);
Json to_json(const RunReport& r);

// Copy of a report JSON with all runtime_ms fields removed, for
// byte-identical comparison of deterministic content.
Json report_without_timing(const Json& j);

void write_json_file(const std::string& path, const Json& j);

// ---------------------------------------------------------------------------
// Configuration

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckConfig {
  std::string check;
  std::vector<long> primes;      // empty = check default
  long draws = -1;               // -1 = check default
  long D = -1;                   // series truncation order
  long D_z = -1;                 // z-truncation for digit extraction
  std::string mode;              // exact-random-rational | numeric-random | explicit
  Json params = Json::object();  // explicit parameters (check-specific keys)
  Json tolerances = Json::object();
  std::string matrix_file;       // user-supplied connection (pcurv checks)
  std::string out;               // optional per-check report path
  bool seed_set = false;
  unsigned long long seed = 0;   // per-check override
};

struct RunConfig {
  unsigned long long seed = 1;
  long jobs = 1;
  std::vector<CheckConfig> checks;
};

RunConfig parse_run_config(const Json& j);
RunConfig load_run_config(const std::string& path);

}  // namespace qk
