#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "qkroots/checks.hpp"
#include "qkroots/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qkroots: exact and numeric verification checks for shift-operator models"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  long seed = -1, jobs = -1;
  CLI::App* run = app.add_subcommand("run", "run the checks described by a JSON config");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--out", out_path, "report output path")->required();
  run->add_option("--seed", seed, "override the top-level seed");
  run->add_option("--jobs", jobs, "worker threads per check");

  CLI::App* list = app.add_subcommand("list", "print the check catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      std::printf("%s\n", qk::catalog_json().dump(2).c_str());
      return 0;
    }
    qk::RunConfig cfg = qk::load_run_config(config_path);
    if (seed >= 0) cfg.seed = static_cast<unsigned long long>(seed);
    if (jobs >= 1) cfg.jobs = jobs;
    qk::RunReport report = qk::run_all(cfg);
    qk::write_json_file(out_path, qk::to_json(report));
    for (const auto& check : report.checks)
      std::printf("%-18s %s (%ld cases, %.0f ms)\n", check.check.c_str(), check.status.c_str(),
                  static_cast<long>(check.cases.size()), check.runtime_ms);
    std::printf("summary: %ld pass, %ld finding, %ld fail -> %s\n", report.passes, report.findings,
                report.failures, report.status.c_str());
    return report.failures > 0 ? 1 : 0;
  } catch (const qk::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
