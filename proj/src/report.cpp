#include "qkroots/report.hpp"

#include <fstream>

namespace qk {

Json to_json(const CaseRecord& c) {
  Json j = Json::object();
  j["index"] = c.index;
  j["parameters"] = c.parameters;
  j["status"] = case_status_name(c.status);
  j["data"] = c.data;
  j["runtime_ms"] = c.runtime_ms;
  return j;
}

Json to_json(const CheckResult& r) {
  Json j = Json::object();
  j["check"] = r.check;
  j["module"] = r.module;
  j["tags"] = r.tags;
  j["status"] = r.status;
  if (!r.error.empty()) j["error"] = r.error;
  Json cs = Json::array();
  for (const auto& c : r.cases) cs.push_back(to_json(c));
  j["cases"] = cs;
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

Json to_json(const RunReport& r) {
  Json j = Json::object();
  j["schema_version"] = r.schema_version;
  j["toolkit_version"] = r.toolkit_version;
  j["seed"] = r.seed;
  j["conventions"] = r.conventions;
  Json cs = Json::array();
  for (const auto& c : r.checks) cs.push_back(to_json(c));
  j["checks"] = cs;
  Json counts = Json::object();
  counts["pass"] = r.passes;
  counts["fail"] = r.failures;
  counts["finding"] = r.findings;
  j["counts"] = counts;
  j["status"] = r.status;
  return j;
}

Json report_without_timing(const Json& j) {
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "runtime_ms") continue;
      out[it.key()] = report_without_timing(it.value());
    }
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& v : j) out.push_back(report_without_timing(v));
    return out;
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

namespace {

[[noreturn]] void config_fail(const std::string& what) { throw ConfigError("config: " + what); }

long require_int(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) config_fail("'" + key + "' must be an integer");
  return v.get<long>();
}

std::vector<long> require_int_list(const Json& v, const std::string& key) {
  if (!v.is_array()) config_fail("'" + key + "' must be an array of integers");
  std::vector<long> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) config_fail("'" + key + "' must contain integers only");
    out.push_back(e.get<long>());
  }
  return out;
}

std::string require_string(const Json& v, const std::string& key) {
  if (!v.is_string()) config_fail("'" + key + "' must be a string");
  return v.get<std::string>();
}

CheckConfig parse_check_config(const Json& j) {
  if (!j.is_object()) config_fail("each entry of 'checks' must be an object");
  CheckConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    if (key == "check") {
      cfg.check = require_string(v, key);
    } else if (key == "primes") {
      cfg.primes = require_int_list(v, key);
    } else if (key == "draws") {
      cfg.draws = require_int(v, key);
      if (cfg.draws < 0) config_fail("'draws' must be nonnegative");
    } else if (key == "D") {
      cfg.D = require_int(v, key);
      if (cfg.D < 0) config_fail("'D' must be nonnegative");
    } else if (key == "D_z") {
      cfg.D_z = require_int(v, key);
      if (cfg.D_z < 0) config_fail("'D_z' must be nonnegative");
    } else if (key == "mode") {
      cfg.mode = require_string(v, key);
      if (cfg.mode != "exact-random-rational" && cfg.mode != "numeric-random" && cfg.mode != "explicit")
        config_fail("'mode' must be exact-random-rational, numeric-random, or explicit");
    } else if (key == "params") {
      if (!v.is_object()) config_fail("'params' must be an object");
      cfg.params = v;
    } else if (key == "tolerances") {
      if (!v.is_object()) config_fail("'tolerances' must be an object");
      for (auto t = v.begin(); t != v.end(); ++t)
        if (!t.value().is_number()) config_fail("tolerance '" + t.key() + "' must be a number");
      cfg.tolerances = v;
    } else if (key == "matrix_file") {
      cfg.matrix_file = require_string(v, key);
    } else if (key == "out") {
      cfg.out = require_string(v, key);
    } else if (key == "seed") {
      if (!v.is_number_integer() || v.get<long long>() < 0) config_fail("'seed' must be a nonnegative integer");
      cfg.seed = v.get<unsigned long long>();
      cfg.seed_set = true;
    } else {
      config_fail("unknown key '" + key + "' in check entry");
    }
  }
  if (cfg.check.empty()) config_fail("check entry is missing 'check'");
  for (long p : cfg.primes)
    if (p < 1) config_fail("'primes' entries must be positive");
  return cfg;
}

}  // namespace

RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) config_fail("top level must be an object");
  RunConfig cfg;
  bool saw_checks = false;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    if (key == "schema_version") {
      if (!v.is_string()) config_fail("'schema_version' must be a string");
    } else if (key == "seed") {
      if (!v.is_number_integer() || v.get<long long>() < 0) config_fail("'seed' must be a nonnegative integer");
      cfg.seed = v.get<unsigned long long>();
    } else if (key == "jobs") {
      cfg.jobs = require_int(v, key);
      if (cfg.jobs < 1) config_fail("'jobs' must be at least 1");
    } else if (key == "checks") {
      if (!v.is_array()) config_fail("'checks' must be an array");
      for (const auto& e : v) cfg.checks.push_back(parse_check_config(e));
      saw_checks = true;
    } else {
      config_fail("unknown top-level key '" + key + "'");
    }
  }
  if (!saw_checks || cfg.checks.empty()) config_fail("'checks' must be a nonempty array");
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_fail("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    config_fail(std::string("invalid JSON: ") + e.what());
  }
  return parse_run_config(j);
}

}  // namespace qk
