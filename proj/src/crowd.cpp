#include "wocce/crowd.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "wocce/diversity.hpp"
#include "wocce/independence.hpp"
#include "wocce/seeds.hpp"

namespace wocce {

void ThresholdConfig::validate() const {
  if (!(it >= 0.0 && it <= 1.0)) throw ConfigError("iT must lie in [0, 1]");
  if (!(dt >= 0.0 && dt <= 1.0)) throw ConfigError("dT must lie in [0, 1]");
  if (ct < 1) throw ConfigError("cT must be >= 1");
  if (kb < 2) throw ConfigError("Kb must be >= 2");
  if (candidate_budget < 1) throw ConfigError("candidate budget must be >= 1");
  if (target_crowd_size && *target_crowd_size < 1) throw ConfigError("target crowd size must be >= 1");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "accepted";
    case Verdict::RejectedIndependence: return "rejected_independence";
    case Verdict::RejectedDiversity: return "rejected_diversity";
    case Verdict::Failed: return "failed";
  }
  return "?";
}

int sample_cluster_count(int kb, int ct, std::mt19937_64& rng) {
  if (ct < 1) throw ConfigError("cT must be >= 1");
  if (ct == 1) return kb;
  std::uniform_int_distribution<int> pick(kb, ct * kb);
  return pick(rng);
}

Verdict admit(Partition candidate, Crowd& crowd, const ThresholdConfig& cfg, AdmissionRecord record) {
  record.descriptor = candidate.descriptor;
  record.k = candidate.k;
  record.seed = candidate.source_seed;
  if (record.requested_k == 0) record.requested_k = candidate.k;

  const std::span<const Partition> snapshot(crowd.members);
  record.independence = independence(candidate, snapshot);
  if (cfg.it > 0.0 && !(*record.independence > cfg.it)) {
    record.verdict = Verdict::RejectedIndependence;
  } else {
    record.diversity = diversity(candidate, snapshot);
    if (cfg.dt > 0.0 && !(*record.diversity > cfg.dt)) {
      record.verdict = Verdict::RejectedDiversity;
    } else {
      record.verdict = Verdict::Accepted;
    }
  }
  if (record.verdict == Verdict::Accepted) crowd.members.push_back(std::move(candidate));
  crowd.admission_log.push_back(std::move(record));
  return crowd.admission_log.back().verdict;
}

Crowd build_crowd(const Dataset& ds, const std::vector<AlgorithmDescriptor>& roster, const ThresholdConfig& cfg,
                  std::uint64_t seed, BaseRunner* runner) {
  cfg.validate();
  if (roster.size() < 2) throw ConfigError("the roster needs more than one base algorithm");

  std::optional<BaseRunner> local;
  if (!runner) runner = &local.emplace(ds);

  std::mt19937_64 count_rng(derive_seed(seed, 0xc0u));
  const int n = static_cast<int>(ds.samples());
  Crowd crowd;
  for (int attempt = 0; attempt < cfg.candidate_budget; ++attempt) {
    if (cfg.target_crowd_size && static_cast<int>(crowd.members.size()) >= *cfg.target_crowd_size) break;

    const auto& desc = roster[static_cast<std::size_t>(attempt) % roster.size()];
    int k = sample_cluster_count(cfg.kb, cfg.ct, count_rng);
    if (cfg.exact_cluster_count) k = cfg.ct * cfg.kb;
    k = std::min(k, n);
    const std::uint64_t cand_seed = derive_seed(seed, static_cast<std::uint64_t>(attempt));

    AdmissionRecord record;
    record.attempt = attempt;
    record.requested_k = k;
    std::optional<Partition> candidate;
    try {
      candidate = runner->run(desc, k, cand_seed);
    } catch (const DegenerateFitError& e) {
      record.descriptor = desc;
      record.seed = cand_seed;
      record.verdict = Verdict::Failed;
      record.note = e.what();
      crowd.admission_log.push_back(std::move(record));
      continue;
    }
    admit(std::move(*candidate), crowd, cfg, std::move(record));
  }

  if (crowd.members.empty())
    throw NoWiseCrowdError("no candidate passed the admission filters (iT=" + std::to_string(cfg.it) +
                               ", dT=" + std::to_string(cfg.dt) + ")",
                           crowd.admission_log);
  return crowd;
}

std::string admission_log_jsonl(const std::vector<AdmissionRecord>& log, std::optional<int> run) {
  std::ostringstream out;
  for (const auto& r : log) {
    nlohmann::json j;
    if (run) j["run"] = *run;
    j["attempt"] = r.attempt;
    j["descriptor"] = r.descriptor.to_string();
    j["requested_k"] = r.requested_k;
    j["k"] = r.k;
    j["seed"] = r.seed;
    j["independence"] = r.independence ? nlohmann::json(*r.independence) : nlohmann::json();
    j["diversity"] = r.diversity ? nlohmann::json(*r.diversity) : nlohmann::json();
    j["verdict"] = to_string(r.verdict);
    if (!r.note.empty()) j["note"] = r.note;
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace wocce
