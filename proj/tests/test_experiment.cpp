#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "wocce/error.hpp"
#include "wocce/experiment.hpp"

using namespace wocce;

namespace {

ExperimentConfig iris_config(int runs) {
  ExperimentConfig cfg;
  cfg.dataset = WOCCE_DATA_DIR "/iris.csv";
  cfg.thresholds.it = 0.2;
  cfg.thresholds.dt = 0.06;
  cfg.thresholds.candidate_budget = 48;
  cfg.runs = runs;
  return cfg;
}

}  // namespace

TEST_CASE("parse_grid") {
  auto g = parse_grid("0:0.5:0.1");
  REQUIRE(g.size() == 6);
  CHECK(g.back() == doctest::Approx(0.5));
  CHECK(parse_grid("1:5:1").size() == 5);
  CHECK(parse_grid("0.3") == std::vector<double>{0.3});
  CHECK_THROWS_AS(parse_grid("1:0:0.1"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:1:0"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:1"), ConfigError);
}

TEST_CASE("settings and config files") {
  ExperimentConfig cfg;
  apply_setting(cfg, "it", "0.25");
  apply_setting(cfg, "roster", "kmeans,fcm");
  apply_setting(cfg, "exact_k", "true");
  CHECK(cfg.thresholds.it == 0.25);
  CHECK(cfg.roster.size() == 2);
  CHECK(cfg.thresholds.exact_cluster_count);
  CHECK_THROWS_AS(apply_setting(cfg, "colour", "red"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "runs", "ten"), ConfigError);

  auto path = std::filesystem::temp_directory_path() / "wocce_test.conf";
  std::ofstream(path) << "# iris\ndataset = data/iris.csv\nct = 3   # decentralize\n\nvary = dt\ngrid = 0:0.1:0.05\n";
  load_config_file(cfg, path);
  CHECK(cfg.dataset == "data/iris.csv");
  CHECK(cfg.thresholds.ct == 3);
  REQUIRE(cfg.sweep);
  CHECK(cfg.sweep->param == SweepParam::Dt);
  CHECK(cfg.sweep->grid.size() == 3);
  std::ofstream(path) << "runs 3\n";
  CHECK_THROWS_AS(load_config_file(cfg, path), ConfigError);
}

TEST_CASE("resolve_dataset") {
  ExperimentConfig cfg;
  auto hr = resolve_dataset(cfg);
  CHECK(hr.samples() == 400);
  cfg.dataset = "halfring:100:0.05:3";
  CHECK(resolve_dataset(cfg).samples() == 100);
  cfg.dataset = WOCCE_DATA_DIR "/wine.csv";
  cfg.normalize = true;
  auto wine = resolve_dataset(cfg);
  CHECK(wine.normalized);
  CHECK(wine.dims() == 13);
}

TEST_CASE("run_experiment means recompute from raw runs and replay exactly") {
  auto cfg = iris_config(3);
  cfg.baselines = {"kmeans", "fcm", "subtractive", "single_linkage", "eac", "gmm"};
  auto rep = run_experiment(cfg);
  CHECK(rep.methods.size() == 7);
  CHECK(rep.kb == 3);
  for (const auto& m : rep.methods) {
    double acc = 0.0, nmi = 0.0;
    int ok = 0;
    for (const auto& r : m.runs)
      if (!r.failed) acc += r.accuracy, nmi += r.nmi, ++ok;
    REQUIRE(ok > 0);
    CHECK(m.mean_accuracy == doctest::Approx(acc / ok).epsilon(1e-12));
    CHECK(m.mean_nmi == doctest::Approx(nmi / ok).epsilon(1e-12));
  }
  auto again = run_experiment(cfg);
  for (std::size_t i = 0; i < rep.methods.size(); ++i)
    for (std::size_t r = 0; r < rep.methods[i].runs.size(); ++r)
      CHECK(rep.methods[i].runs[r].accuracy == again.methods[i].runs[r].accuracy);
  CHECK(rep.admission_jsonl == again.admission_jsonl);
  CHECK_THROWS_AS(rep.method("nope"), ConfigError);
}

TEST_CASE("failed runs are counted, not averaged") {
  auto cfg = iris_config(2);
  cfg.thresholds.dt = 1.0;
  auto rep = run_experiment(cfg);
  CHECK(rep.failed_runs() == 2);
  CHECK(std::isnan(rep.method("wocce").mean_accuracy));
  auto json = nlohmann::json::parse(report_json({rep}, cfg));
  CHECK(json["methods"][0]["failed_runs"] == 2);
}

TEST_CASE("a single-point sweep matches run_experiment with the other thresholds disabled") {
  auto cfg = iris_config(2);
  cfg.sweep = SweepSpec{SweepParam::It, {0.2}};
  auto sweep = run_sweep(cfg);
  REQUIRE(sweep.size() == 1);
  auto plain_cfg = iris_config(2);
  plain_cfg.thresholds.dt = 0.0;
  auto plain = run_experiment(plain_cfg);
  CHECK(sweep[0].thresholds.dt == 0.0);
  CHECK(sweep[0].method("wocce").mean_accuracy == plain.method("wocce").mean_accuracy);
  CHECK(sweep[0].admission_jsonl.find("\"sweep_param\":\"it\"") != std::string::npos);
}

TEST_CASE("write_outputs writes report, summary and admission files") {
  auto dir = std::filesystem::temp_directory_path() / "wocce_test_outputs";
  std::filesystem::remove_all(dir);
  auto cfg = iris_config(1);
  cfg.baselines = {"kmeans"};
  cfg.output = (dir / "report.json").string();
  write_outputs({run_experiment(cfg)}, cfg);
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(std::filesystem::exists(dir / "summary.csv"));
  CHECK(std::filesystem::exists(dir / "admission.jsonl"));

  cfg.sweep = SweepSpec{SweepParam::Ct, {1, 2}};
  write_outputs(run_sweep(cfg), cfg);
  std::ifstream in(dir / "sweep.csv");
  std::string header, line;
  std::getline(in, header);
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows >= 2);
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.runs = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.runs = 1;
  cfg.roster = {AlgorithmDescriptor::kmeans()};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
