// Command-line front end for the wocce C library.
//
//   wocce run   --dataset data/iris.csv --it 0.2 --dt 0.06 --ct 1 --runs 10 --out out/report.json
//   wocce sweep --dataset data/iris.csv --vary it --grid 0:0.5:0.05 --out sweep/report.json
//
// Exit status: 0 on success, 2 when any run failed to form a crowd, 1 on
// any other error.

#include <cmath>
#include <cstdio>
#include <memory>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wocce/wocce.h"

namespace {

struct Options {
  std::string config;
  std::vector<std::pair<std::string, CLI::Option*>> settings;
  std::vector<std::string> values;
};

void add_common(CLI::App& cmd, Options& opt) {
  cmd.add_option("--config", opt.config, "key = value file; flags override it")->check(CLI::ExistingFile);
  // Every flag below maps 1:1 onto a configuration key.
  const std::vector<std::pair<std::string, std::string>> keys = {
      {"dataset", "CSV path or halfring[:n[:noise[:seed]]]"},
      {"kb", "final cluster count (default: number of classes)"},
      {"it", "independence threshold iT (0 disables)"},
      {"dt", "diversity threshold dT (0 disables)"},
      {"ct", "decentralization coefficient cT"},
      {"runs", "independent runs"},
      {"seed", "master seed"},
      {"roster", "comma-separated base algorithms, or 'default'"},
      {"baselines", "comma-separated: kmeans,fcm,subtractive,single_linkage,eac,<descriptor>"},
      {"out", "report.json path; CSV/JSONL files go next to it"},
      {"budget", "candidate attempts per run"},
      {"target", "stop once the crowd reaches this size"},
      {"normalize", "z-score the features (true/false)"},
      {"labels", "last CSV column holds class labels (true/false)"},
      {"exact-k", "always request ct*kb clusters (true/false)"},
  };
  opt.values.reserve(keys.size() + 2);
  for (const auto& [key, help] : keys) {
    opt.values.emplace_back();
    auto* o = cmd.add_option("--" + key, opt.values.back(), help);
    std::string cfg_key = key == "exact-k" ? "exact_k" : key;
    opt.settings.emplace_back(cfg_key, o);
  }
}

int report_error(const char* what) {
  std::cerr << "wocce: " << what << ": " << wocce_last_error() << '\n';
  return 1;
}

void print_summary(const wocce_report* report) {
  auto root = nlohmann::json::parse(wocce_report_json(report));
  auto print_point = [](const nlohmann::json& point) {
    if (point.contains("sweep_param"))
      std::printf("%s = %g\n", point["sweep_param"].get<std::string>().c_str(), point["sweep_value"].get<double>());
    std::printf("  %-22s %10s %8s %8s %10s %6s\n", "method", "accuracy", "nmi", "crowd", "ms/run", "failed");
    for (const auto& m : point["methods"]) {
      auto num = [](const nlohmann::json& v) { return v.is_null() ? std::nan("") : v.get<double>(); };
      std::printf("  %-22s %10.2f %8.4f %8.1f %10.1f %6d\n", m["method"].get<std::string>().c_str(),
                  num(m["mean_accuracy"]), num(m["mean_nmi"]), num(m["mean_crowd_size"]), num(m["mean_wall_ms"]),
                  m["failed_runs"].get<int>());
    }
  };
  if (root.contains("sweep")) {
    for (const auto& point : root["sweep"]) print_point(point);
  } else {
    print_point(root);
  }
}

int execute(const Options& opt, bool sweep, const std::string& vary, const std::string& grid) {
  wocce_config* cfg = nullptr;
  if (wocce_config_create(&cfg) != WOCCE_OK) return report_error("config");
  auto cleanup_cfg = std::unique_ptr<wocce_config, decltype(&wocce_config_free)>(cfg, &wocce_config_free);

  if (!opt.config.empty() && wocce_config_load_file(cfg, opt.config.c_str()) != WOCCE_OK)
    return report_error(opt.config.c_str());
  for (std::size_t i = 0; i < opt.settings.size(); ++i) {
    const auto& [key, option] = opt.settings[i];
    if (option->count() == 0) continue;
    if (wocce_config_set(cfg, key.c_str(), opt.values[i].c_str()) != WOCCE_OK) return report_error(key.c_str());
  }
  if (sweep) {
    if (!vary.empty() && wocce_config_set(cfg, "vary", vary.c_str()) != WOCCE_OK) return report_error("vary");
    if (!grid.empty() && wocce_config_set(cfg, "grid", grid.c_str()) != WOCCE_OK) return report_error("grid");
  }

  wocce_report* report = nullptr;
  wocce_status st = sweep ? wocce_run_sweep(cfg, &report) : wocce_run_experiment(cfg, &report);
  if (st != WOCCE_OK) return report_error(sweep ? "sweep" : "run");
  auto cleanup_report = std::unique_ptr<wocce_report, decltype(&wocce_report_free)>(report, &wocce_report_free);

  if (wocce_report_write(report, nullptr) != WOCCE_OK) return report_error("writing outputs");
  print_summary(report);

  std::size_t failed = 0;
  wocce_report_failed_runs(report, &failed);
  if (failed > 0) {
    std::cerr << "wocce: " << failed << " run(s) produced no wise crowd\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wisdom-of-crowds cluster ensemble"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wocce_version()));

  Options run_opt, sweep_opt;
  std::string vary, grid;

  auto* run = app.add_subcommand("run", "build crowds, form the consensus, and score it");
  add_common(*run, run_opt);

  auto* sweep = app.add_subcommand("sweep", "repeat 'run' over a grid of one threshold");
  add_common(*sweep, sweep_opt);
  sweep->add_option("--vary", vary, "threshold to sweep")->check(CLI::IsMember({"it", "dt", "ct"}));
  sweep->add_option("--grid", grid, "start:stop:step (inclusive)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return execute(run_opt, false, vary, grid);
    return execute(sweep_opt, true, vary, grid);
  } catch (const std::exception& e) {
    std::cerr << "wocce: " << e.what() << '\n';
    return 1;
  }
}
