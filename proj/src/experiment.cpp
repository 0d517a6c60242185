#include "wocce/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "wocce/base_clustering.hpp"
#include "wocce/consensus.hpp"
#include "wocce/error.hpp"
#include "wocce/metrics.hpp"
#include "wocce/seeds.hpp"

namespace wocce {

namespace {

using Clock = std::chrono::steady_clock;

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = strip(text);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("bad value '" + std::string(text) + "' for " + std::string(key));
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = strip(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ConfigError("bad boolean '" + std::string(text) + "' for " + std::string(key));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto pos = text.find(',', start);
    auto item = strip(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!item.empty() && item != "none") out.emplace_back(item);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

ThresholdConfig effective_thresholds(const ExperimentConfig& cfg, const Dataset& ds) {
  ThresholdConfig th = cfg.thresholds;
  if (th.kb <= 0) {
    if (!ds.k_true) throw ConfigError("kb is not set and the dataset has no ground-truth class count");
    th.kb = *ds.k_true;
  }
  if (th.candidate_budget <= 0) th.candidate_budget = static_cast<int>(10 * cfg.roster.size());
  th.validate();
  return th;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

nlohmann::json thresholds_json(const ThresholdConfig& th) {
  nlohmann::json j;
  j["it"] = th.it;
  j["dt"] = th.dt;
  j["ct"] = th.ct;
  j["kb"] = th.kb;
  j["candidate_budget"] = th.candidate_budget;
  j["target_crowd_size"] = th.target_crowd_size ? nlohmann::json(*th.target_crowd_size) : nlohmann::json();
  j["exact_cluster_count"] = th.exact_cluster_count;
  return j;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (roster.size() < 2) throw ConfigError("the roster needs more than one base algorithm");
  if (sweep && sweep->grid.empty()) throw ConfigError("sweep grid is empty");
  for (const auto& b : baselines) {
    if (b == "kmeans" || b == "fcm" || b == "subtractive" || b == "single_linkage" || b == "eac") continue;
    (void)AlgorithmDescriptor::parse(b);
  }
}

void MethodResult::aggregate() {
  double acc = 0.0, nm = 0.0, crowd = 0.0, wall = 0.0;
  int ok = 0;
  failed_runs = 0;
  for (const auto& r : runs) {
    if (r.failed) {
      ++failed_runs;
      continue;
    }
    acc += r.accuracy;
    nm += r.nmi;
    crowd += r.crowd_size;
    wall += r.wall_ms;
    ++ok;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  mean_accuracy = ok ? acc / ok : nan;
  mean_nmi = ok ? nm / ok : nan;
  mean_crowd_size = ok ? crowd / ok : nan;
  mean_wall_ms = ok ? wall / ok : nan;
}

const MethodResult& ExperimentReport::method(std::string_view name) const {
  for (const auto& m : methods)
    if (m.method == name) return m;
  throw ConfigError("report has no method '" + std::string(name) + "'");
}

int ExperimentReport::failed_runs() const {
  int total = 0;
  for (const auto& m : methods) total += m.failed_runs;
  return total;
}

const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::It: return "it";
    case SweepParam::Dt: return "dt";
    case SweepParam::Ct: return "ct";
  }
  return "?";
}

SweepParam parse_sweep_param(std::string_view s) {
  s = strip(s);
  if (s == "it") return SweepParam::It;
  if (s == "dt") return SweepParam::Dt;
  if (s == "ct") return SweepParam::Ct;
  throw ConfigError("sweep parameter must be one of it, dt, ct (got '" + std::string(s) + "')");
}

std::vector<double> parse_grid(std::string_view s) {
  s = strip(s);
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(':', start);
    parts.push_back(parse_number<double>("grid", s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw ConfigError("grid must be 'start:stop:step' or a single value");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0.0) || b < a) throw ConfigError("grid needs start <= stop and a positive step");
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long i = 0; i <= count; ++i) grid.push_back(a + static_cast<double>(i) * step);
  return grid;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  key = strip(key);
  value = strip(value);
  if (key == "dataset") cfg.dataset = std::string(value);
  else if (key == "labels") cfg.has_labels = parse_bool(key, value);
  else if (key == "normalize") cfg.normalize = parse_bool(key, value);
  else if (key == "kb") cfg.thresholds.kb = parse_number<int>(key, value);
  else if (key == "it") cfg.thresholds.it = parse_number<double>(key, value);
  else if (key == "dt") cfg.thresholds.dt = parse_number<double>(key, value);
  else if (key == "ct") cfg.thresholds.ct = parse_number<int>(key, value);
  else if (key == "budget") cfg.thresholds.candidate_budget = parse_number<int>(key, value);
  else if (key == "target") {
    int t = parse_number<int>(key, value);
    cfg.thresholds.target_crowd_size = t > 0 ? std::optional<int>(t) : std::nullopt;
  } else if (key == "exact_k") cfg.thresholds.exact_cluster_count = parse_bool(key, value);
  else if (key == "runs") cfg.runs = parse_number<int>(key, value);
  else if (key == "seed") cfg.master_seed = parse_number<std::uint64_t>(key, value);
  else if (key == "roster") cfg.roster = value == "default" ? default_roster() : parse_roster(value);
  else if (key == "baselines") cfg.baselines = split_list(value);
  else if (key == "out") cfg.output = std::string(value);
  else if (key == "vary") {
    if (!cfg.sweep) cfg.sweep.emplace();
    cfg.sweep->param = parse_sweep_param(value);
  } else if (key == "grid") {
    if (!cfg.sweep) cfg.sweep.emplace();
    cfg.sweep->grid = parse_grid(value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

void load_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = strip(view);
    if (view.empty()) continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    apply_setting(cfg, view.substr(0, eq), view.substr(eq + 1));
  }
}

Dataset resolve_dataset(const ExperimentConfig& cfg) {
  Dataset ds;
  if (cfg.dataset == "halfring" || cfg.dataset.starts_with("halfring:")) {
    std::size_t n = 400;
    double noise = 0.15;
    std::uint64_t seed = 1;
    std::string_view rest(cfg.dataset);
    rest.remove_prefix(std::string_view("halfring").size());
    std::vector<std::string> parts;
    while (!rest.empty()) {
      rest.remove_prefix(1);
      auto pos = rest.find(':');
      parts.emplace_back(rest.substr(0, pos));
      rest = pos == std::string_view::npos ? std::string_view() : rest.substr(pos);
    }
    if (parts.size() > 3) throw ConfigError("halfring takes at most n:noise:seed");
    if (parts.size() > 0) n = parse_number<std::size_t>("halfring n", parts[0]);
    if (parts.size() > 1) noise = parse_number<double>("halfring noise", parts[1]);
    if (parts.size() > 2) seed = parse_number<std::uint64_t>("halfring seed", parts[2]);
    ds = generate_half_ring(n, noise, seed);
  } else {
    ds = load_csv(cfg.dataset, cfg.has_labels);
  }
  if (cfg.normalize) ds = zscore_normalize(ds);
  return ds;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) { return run_experiment(cfg, resolve_dataset(cfg)); }

ExperimentReport run_experiment(const ExperimentConfig& cfg, const Dataset& ds) {
  cfg.validate();
  if (!ds.labels) throw ConfigError("experiments need ground-truth labels");
  const Labels& truth = *ds.labels;
  const ThresholdConfig th = effective_thresholds(cfg, ds);

  ExperimentReport report;
  report.dataset = ds.name;
  report.samples = ds.samples();
  report.kb = th.kb;
  report.thresholds = th;
  report.runs = cfg.runs;
  report.master_seed = cfg.master_seed;

  BaseRunner runner(ds);

  auto score = [&](RunResult& r, const Partition& p) {
    r.accuracy = accuracy(p, truth);
    r.nmi = nmi(p.labels, truth);
  };

  auto crowd_method = [&](const std::string& name, const ThresholdConfig& t, bool keep_log) {
    MethodResult m;
    m.method = name;
    for (int run = 0; run < cfg.runs; ++run) {
      RunResult r;
      r.run = run;
      r.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(run));
      auto start = Clock::now();
      try {
        Crowd crowd = build_crowd(ds, cfg.roster, t, r.seed, &runner);
        Partition result = wocce_consensus(crowd, ds.samples(), t.kb);
        r.wall_ms = ms_since(start);
        r.crowd_size = static_cast<double>(crowd.members.size());
        score(r, result);
        if (keep_log) report.admission_jsonl += admission_log_jsonl(crowd.admission_log, run);
      } catch (const NoWiseCrowdError& e) {
        r.wall_ms = ms_since(start);
        r.failed = true;
        r.error = e.what();
        if (keep_log) report.admission_jsonl += admission_log_jsonl(e.admission_log(), run);
      }
      m.runs.push_back(std::move(r));
    }
    m.aggregate();
    return m;
  };

  auto base_method = [&](const std::string& name, const AlgorithmDescriptor& desc) {
    MethodResult m;
    m.method = name;
    for (int run = 0; run < cfg.runs; ++run) {
      RunResult r;
      r.run = run;
      r.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(run));
      auto start = Clock::now();
      try {
        Partition p = runner.run(desc, th.kb, r.seed);
        r.wall_ms = ms_since(start);
        r.crowd_size = 1.0;
        score(r, p);
      } catch (const DegenerateFitError& e) {
        r.wall_ms = ms_since(start);
        r.failed = true;
        r.error = e.what();
      }
      m.runs.push_back(std::move(r));
    }
    m.aggregate();
    return m;
  };

  report.methods.push_back(crowd_method("wocce", th, true));
  for (const auto& b : cfg.baselines) {
    if (b == "eac") {
      ThresholdConfig open = th;
      open.it = 0.0;
      open.dt = 0.0;
      open.ct = 1;
      open.target_crowd_size.reset();
      open.exact_cluster_count = false;
      report.methods.push_back(crowd_method("eac", open, false));
    } else if (b == "kmeans") {
      report.methods.push_back(base_method(b, AlgorithmDescriptor::kmeans()));
    } else if (b == "fcm") {
      report.methods.push_back(base_method(b, AlgorithmDescriptor::fuzzy_cmeans()));
    } else if (b == "subtractive") {
      report.methods.push_back(base_method(b, AlgorithmDescriptor::subtractive(0.5)));
    } else if (b == "single_linkage") {
      report.methods.push_back(base_method(b, AlgorithmDescriptor::hierarchical(Linkage::Single, Metric::Euclidean)));
    } else {
      report.methods.push_back(base_method(b, AlgorithmDescriptor::parse(b)));
    }
  }
  return report;
}

std::vector<ExperimentReport> run_sweep(const ExperimentConfig& cfg) {
  if (!cfg.sweep || cfg.sweep->grid.empty()) throw ConfigError("sweep needs a nonempty grid");
  const Dataset ds = resolve_dataset(cfg);
  std::vector<ExperimentReport> reports;
  for (double value : cfg.sweep->grid) {
    ExperimentConfig point = cfg;
    point.thresholds.it = 0.0;
    point.thresholds.dt = 0.0;
    point.thresholds.ct = 1;
    switch (cfg.sweep->param) {
      case SweepParam::It: point.thresholds.it = value; break;
      case SweepParam::Dt: point.thresholds.dt = value; break;
      case SweepParam::Ct: {
        double r = std::round(value);
        if (std::abs(r - value) > 1e-9 || r < 1) throw ConfigError("cT grid values must be positive integers");
        point.thresholds.ct = static_cast<int>(r);
        break;
      }
    }
    ExperimentReport rep = run_experiment(point, ds);
    rep.swept = cfg.sweep->param;
    rep.sweep_value = value;
    std::string tagged;
    std::istringstream lines(rep.admission_jsonl);
    for (std::string line; std::getline(lines, line);) {
      auto j = nlohmann::json::parse(line);
      j["sweep_param"] = to_string(rep.swept.value());
      j["sweep_value"] = value;
      tagged += j.dump() + "\n";
    }
    rep.admission_jsonl = std::move(tagged);
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::string report_json(const std::vector<ExperimentReport>& reports, const ExperimentConfig& cfg) {
  nlohmann::json root;
  root["dataset"] = cfg.dataset;
  root["normalize"] = cfg.normalize;
  root["runs"] = cfg.runs;
  root["master_seed"] = cfg.master_seed;
  nlohmann::json roster = nlohmann::json::array();
  for (const auto& d : cfg.roster) roster.push_back(d.to_string());
  root["roster"] = roster;
  root["nmi_normalization"] = "geometric mean: I(a;b)/sqrt(H(a)H(b))";
  root["accuracy"] = "percent correct after optimal one-to-one relabeling";

  nlohmann::json points = nlohmann::json::array();
  for (const auto& rep : reports) {
    nlohmann::json p;
    p["dataset_name"] = rep.dataset;
    p["samples"] = rep.samples;
    p["thresholds"] = thresholds_json(rep.thresholds);
    if (rep.swept) {
      p["sweep_param"] = to_string(*rep.swept);
      p["sweep_value"] = rep.sweep_value;
    }
    p["failed_runs"] = rep.failed_runs();
    nlohmann::json methods = nlohmann::json::array();
    for (const auto& m : rep.methods) {
      nlohmann::json jm;
      jm["method"] = m.method;
      jm["mean_accuracy"] = number_or_null(m.mean_accuracy);
      jm["mean_nmi"] = number_or_null(m.mean_nmi);
      jm["mean_crowd_size"] = number_or_null(m.mean_crowd_size);
      jm["mean_wall_ms"] = number_or_null(m.mean_wall_ms);
      jm["failed_runs"] = m.failed_runs;
      nlohmann::json runs = nlohmann::json::array();
      for (const auto& r : m.runs) {
        nlohmann::json jr;
        jr["run"] = r.run;
        jr["seed"] = r.seed;
        jr["failed"] = r.failed;
        if (r.failed) {
          jr["error"] = r.error;
        } else {
          jr["accuracy"] = r.accuracy;
          jr["nmi"] = r.nmi;
          jr["crowd_size"] = r.crowd_size;
        }
        jr["wall_ms"] = r.wall_ms;
        runs.push_back(std::move(jr));
      }
      jm["per_run"] = std::move(runs);
      methods.push_back(std::move(jm));
    }
    p["methods"] = std::move(methods);
    points.push_back(std::move(p));
  }
  if (reports.size() == 1 && !reports[0].swept) {
    auto single = points[0];
    for (auto& [k, v] : single.items()) root[k] = v;
  } else {
    root["sweep"] = std::move(points);
  }
  return root.dump(2);
}

std::string summary_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "method,mean_accuracy,mean_nmi,mean_crowd_size,mean_wall_ms,failed_runs\n";
  for (const auto& m : report.methods)
    out << m.method << ',' << m.mean_accuracy << ',' << m.mean_nmi << ',' << m.mean_crowd_size << ','
        << m.mean_wall_ms << ',' << m.failed_runs << '\n';
  return out.str();
}

std::string sweep_csv(const std::vector<ExperimentReport>& reports) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "param,value,it,dt,ct,method,mean_accuracy,mean_nmi,mean_crowd_size,mean_wall_ms,failed_runs\n";
  for (const auto& rep : reports)
    for (const auto& m : rep.methods)
      out << (rep.swept ? to_string(*rep.swept) : "") << ',' << rep.sweep_value << ',' << rep.thresholds.it << ','
          << rep.thresholds.dt << ',' << rep.thresholds.ct << ',' << m.method << ',' << m.mean_accuracy << ','
          << m.mean_nmi << ',' << m.mean_crowd_size << ',' << m.mean_wall_ms << ',' << m.failed_runs << '\n';
  return out.str();
}

void write_outputs(const std::vector<ExperimentReport>& reports, const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  const fs::path report_path(cfg.output);
  fs::path dir = report_path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);

  auto write = [](const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out << text;
  };
  write(report_path, report_json(reports, cfg) + "\n");

  std::string admissions;
  for (const auto& rep : reports) admissions += rep.admission_jsonl;
  write(dir / "admission.jsonl", admissions);

  const bool is_sweep = reports.size() != 1 || reports[0].swept;
  if (is_sweep) {
    write(dir / "sweep.csv", sweep_csv(reports));
  } else {
    write(dir / "summary.csv", summary_csv(reports[0]));
  }
}

}  // namespace wocce
