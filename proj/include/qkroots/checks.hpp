#pragma once

#include <string>
#include <vector>

#include "qkroots/report.hpp"

namespace qk {

struct CheckContext {
  CheckConfig cfg;
  unsigned long long seed = 1;  // resolved (per-check override already applied)
  long jobs = 1;
};

struct CheckDef {
  std::string name;
  std::string module;
  std::vector<std::string> tags;
  std::string budget;  // default runtime budget
  std::string summary;
  CheckResult (*run)(const CheckContext&);
};

const std::vector<CheckDef>& check_catalog();
const CheckDef* find_check(const std::string& name);

// Machine-readable catalog for `qkroots list`.
Json catalog_json();

// Convention flags shared by every report.
Json convention_flags();

CheckResult run_check(const CheckContext& ctx);
RunReport run_all(const RunConfig& cfg);

}  // namespace qk
