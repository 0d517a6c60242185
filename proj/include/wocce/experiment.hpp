#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wocce/crowd.hpp"
#include "wocce/dataset.hpp"
#include "wocce/partition.hpp"

namespace wocce {

enum class SweepParam { It, Dt, Ct };

struct SweepSpec {
  SweepParam param = SweepParam::It;
  std::vector<double> grid;
};

struct ExperimentConfig {
  std::string dataset = "halfring";  // csv path, or halfring[:n[:noise[:seed]]]
  bool has_labels = true;
  bool normalize = false;
  // kb <= 0 means the dataset's k_true; candidate_budget <= 0 means
  // ten attempts per roster entry.
  ThresholdConfig thresholds = [] {
    ThresholdConfig t;
    t.kb = 0;
    t.candidate_budget = 0;
    return t;
  }();
  std::vector<AlgorithmDescriptor> roster = default_roster();
  int runs = 10;
  std::uint64_t master_seed = 1;
  // "kmeans", "fcm", "subtractive", "single_linkage", "eac", or any roster
  // descriptor string such as "gmm" or "hier:ward:euclidean".
  std::vector<std::string> baselines;
  std::string output = "report.json";
  std::optional<SweepSpec> sweep;

  void validate() const;
};

struct RunResult {
  int run = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  double accuracy = 0.0;
  double nmi = 0.0;
  double crowd_size = 0.0;
  double wall_ms = 0.0;
};

struct MethodResult {
  std::string method;
  std::vector<RunResult> runs;
  double mean_accuracy = 0.0;
  double mean_nmi = 0.0;
  double mean_crowd_size = 0.0;
  double mean_wall_ms = 0.0;
  int failed_runs = 0;

  void aggregate();
};

struct ExperimentReport {
  std::string dataset;
  std::size_t samples = 0;
  int kb = 0;
  ThresholdConfig thresholds;
  int runs = 0;
  std::uint64_t master_seed = 0;
  std::optional<SweepParam> swept;
  double sweep_value = 0.0;
  std::vector<MethodResult> methods;
  std::string admission_jsonl;

  const MethodResult& method(std::string_view name) const;
  int failed_runs() const;
};

const char* to_string(SweepParam p);
SweepParam parse_sweep_param(std::string_view s);

/// "a:b:step", inclusive of b up to rounding.
std::vector<double> parse_grid(std::string_view s);

/// Sets one configuration key from its text value. Keys match the CLI flags:
/// dataset, labels, normalize, kb, it, dt, ct, budget, target, exact_k, runs,
/// seed, roster, baselines, out, vary, grid.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// key = value lines; '#' starts a comment.
void load_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

Dataset resolve_dataset(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg, const Dataset& ds);

/// One report per grid point; the thresholds not being swept are switched
/// off (iT = dT = 0, cT = 1).
std::vector<ExperimentReport> run_sweep(const ExperimentConfig& cfg);

std::string report_json(const std::vector<ExperimentReport>& reports, const ExperimentConfig& cfg);
std::string summary_csv(const ExperimentReport& report);
std::string sweep_csv(const std::vector<ExperimentReport>& reports);

/// Writes the JSON report to cfg.output and summary.csv, admission.jsonl
/// (plus sweep.csv for sweeps) next to it.
void write_outputs(const std::vector<ExperimentReport>& reports, const ExperimentConfig& cfg);

}  // namespace wocce
