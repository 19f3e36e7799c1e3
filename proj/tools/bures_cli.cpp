#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bures/errors.hpp"
#include "bures/probability.hpp"
#include "bures/report.hpp"

namespace {

using bures::probability::RunOptions;
using bures::probability::ScenarioResult;

enum Exit { kPass = 0, kTargetFailure = 1, kUsage = 2, kNonConvergence = 3 };

struct Overrides {
  std::vector<std::string> tol;
  std::vector<std::string> set;
  std::string config;
};

std::pair<std::string, std::string> split_pair(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw bures::UsageError("expected key=value, got '" + kv + "'");
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  return {trim(kv.substr(0, eq)), trim(kv.substr(eq + 1))};
}

RunOptions build_options(const Overrides& o) {
  RunOptions opts;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw bures::UsageError("cannot read config file '" + o.config + "'");
    std::string line;
    while (std::getline(in, line)) {
      const auto start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      const auto [k, v] = split_pair(line);
      opts.set(k, v);
    }
  }
  for (const auto& kv : o.set) {
    const auto [k, v] = split_pair(kv);
    opts.set(k, v);
  }
  for (const auto& kv : o.tol) {
    const auto [k, v] = split_pair(kv);
    opts.set("tol." + k, v);
  }
  return opts;
}

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--tol", o.tol, "Tolerance override TARGET=VALUE or SCENARIO.TARGET=VALUE")->take_all();
  cmd->add_option("--set", o.set, "Any option KEY=VALUE (tol.*, ref.*, quad.*)")->take_all();
  cmd->add_option("--config", o.config, "File of KEY=VALUE lines");
}

int status_of(const std::vector<ScenarioResult>& results) {
  for (const auto& r : results) {
    if (!r.converged) return kNonConvergence;
  }
  return bures::report::overall_pass(results) ? kPass : kTargetFailure;
}

int cmd_list() {
  std::printf("%-22s %2s %-5s %-8s %s\n", "id", "k", "dims", "prior", "targets");
  for (const auto& s : bures::probability::scenarios()) {
    std::string names;
    for (const auto& t : s.targets) names += (names.empty() ? "" : ",") + t.name;
    std::printf("%-22s %2d %-5s %-8s %s\n", s.id.c_str(), s.k, s.dims.c_str(),
                s.source == bures::probability::PriorSource::MetricEngine ? "engine" : "printed", names.c_str());
  }
  return kPass;
}

int cmd_run(const std::string& id, bool json, bool csv, const RunOptions& opts) {
  const ScenarioResult r = bures::probability::run_scenario(id, opts);
  if (json) {
    std::cout << bures::report::emit(bures::report::to_json(r));
  } else if (csv) {
    std::cout << bures::report::to_csv(r);
  } else {
    std::cout << bures::report::to_text(r);
  }
  return status_of({r});
}

int cmd_verify(const std::vector<std::string>& only, bool json, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> ids = only;
  if (ids.empty()) {
    for (const auto& s : bures::probability::scenarios()) ids.push_back(s.id);
  }
  std::sort(ids.begin(), ids.end());
  bures::report::ReportDocument doc;
  bool failed_numerically = false;
  for (const auto& id : ids) {
    (void)bures::probability::find_scenario(id);
    try {
      doc.results.push_back(bures::probability::run_scenario(id, opts));
    } catch (const bures::NumericalFailure& e) {
      std::fprintf(stderr, "%s: %s\n", id.c_str(), e.what());
      failed_numerically = true;
    }
  }
  doc.pass = !failed_numerically && bures::report::overall_pass(doc.results);
  if (json) {
    std::cout << bures::report::emit(bures::report::to_json(doc));
  } else {
    int total = 0;
    int passed = 0;
    for (const auto& r : doc.results) {
      for (const auto& t : r.targets) {
        ++total;
        passed += t.pass ? 1 : 0;
        std::printf("[%s] %-22s %-26s paper %-14.10g computed %-18.12g tol %.2g%s\n", t.pass ? "PASS" : "FAIL",
                    r.family.c_str(), t.name.c_str(), t.paper, t.computed, t.tol,
                    r.converged ? "" : "  (not converged)");
      }
    }
    std::printf("overall: %s (%d/%d targets)\n", doc.pass ? "PASS" : "FAIL", passed, total);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "runtime: %.2f s\n", seconds);
  if (failed_numerically) return kNonConvergence;
  return status_of(doc.results);
}

int cmd_plot_data(const std::string& id, int points, const RunOptions& opts) {
  const auto rows = bures::probability::plot_data(id, points, opts);
  const bool one_dim = bures::probability::find_scenario(id).k == 1;
  std::cout << (one_dim ? "theta,prior\n" : "theta,marginal\n");
  for (const auto& [t, v] : rows) {
    std::cout << bures::report::format_number(t) << "," << bures::report::format_number(v) << "\n";
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bures-prior separability probabilities"};
  app.require_subcommand(1);

  app.add_subcommand("list", "List scenarios with their parameter count, dimensions and targets");

  auto* run = app.add_subcommand("run", "Run one scenario");
  std::string run_id;
  bool run_json = false;
  bool run_csv = false;
  Overrides run_over;
  run->add_option("id", run_id, "Scenario id")->required();
  auto* json_flag = run->add_flag("--json", run_json, "JSON output");
  run->add_flag("--csv", run_csv, "CSV output")->excludes(json_flag);
  add_overrides(run, run_over);

  auto* verify = app.add_subcommand("verify", "Run every scenario and compare all targets");
  std::vector<std::string> only;
  bool verify_json = false;
  Overrides verify_over;
  verify->add_option("--only", only, "Restrict to these scenario ids")->take_all();
  verify->add_flag("--json", verify_json, "JSON report");
  add_overrides(verify, verify_over);

  auto* plot = app.add_subcommand("plot-data", "CSV of the normalized prior or a marginal");
  std::string plot_id;
  int points = 1001;
  Overrides plot_over;
  plot->add_option("id", plot_id, "Scenario id")->required();
  plot->add_option("--points", points, "Number of rows")->check(CLI::PositiveNumber);
  add_overrides(plot, plot_over);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (app.got_subcommand("list")) return cmd_list();
    if (run->parsed()) return cmd_run(run_id, run_json, run_csv, build_options(run_over));
    if (verify->parsed()) return cmd_verify(only, verify_json, build_options(verify_over));
    if (plot->parsed()) return cmd_plot_data(plot_id, points, build_options(plot_over));
  } catch (const bures::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const bures::NumericalFailure& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNonConvergence;
  } catch (const bures::DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kNonConvergence;
  }
  return kUsage;
}
