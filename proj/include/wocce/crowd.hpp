#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wocce/base_clustering.hpp"
#include "wocce/error.hpp"
#include "wocce/partition.hpp"

namespace wocce {

// A threshold of exactly 0 switches its filter off; otherwise a candidate
// must score strictly above it.
struct ThresholdConfig {
  double it = 0.0;
  double dt = 0.0;
  int ct = 1;
  int kb = 2;
  int candidate_budget = 160;
  std::optional<int> target_crowd_size;
  bool exact_cluster_count = false;  // always ask for ct*kb clusters

  void validate() const;
};

enum class Verdict { Accepted, RejectedIndependence, RejectedDiversity, Failed };

const char* to_string(Verdict v);

struct AdmissionRecord {
  int attempt = 0;
  AlgorithmDescriptor descriptor;
  int requested_k = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::optional<double> independence;
  std::optional<double> diversity;
  Verdict verdict = Verdict::Failed;
  std::string note;  // failure reason for Verdict::Failed
};

struct Crowd {
  std::vector<Partition> members;
  std::vector<AdmissionRecord> admission_log;
};

class NoWiseCrowdError : public Error {
 public:
  NoWiseCrowdError(const std::string& what, std::vector<AdmissionRecord> log)
      : Error(ErrorCode::NoWiseCrowd, what), log_(std::move(log)) {}

  const std::vector<AdmissionRecord>& admission_log() const { return log_; }

 private:
  std::vector<AdmissionRecord> log_;
};

/// Uniform integer in [kb, ct*kb].
int sample_cluster_count(int kb, int ct, std::mt19937_64& rng);

/// Scores the candidate against the crowd as it stands, independence first,
/// appends it when both filters pass, and logs the outcome.
Verdict admit(Partition candidate, Crowd& crowd, const ThresholdConfig& cfg, AdmissionRecord record = {});

/// Round-robin over the roster, one fresh seed and cluster count per attempt,
/// until the candidate budget or target crowd size is reached. Deterministic
/// given the seed. A runner may be supplied to share memoized work.
Crowd build_crowd(const Dataset& ds, const std::vector<AlgorithmDescriptor>& roster, const ThresholdConfig& cfg,
                  std::uint64_t seed, BaseRunner* runner = nullptr);

/// One JSON object per line.
std::string admission_log_jsonl(const std::vector<AdmissionRecord>& log, std::optional<int> run = std::nullopt);

}  // namespace wocce
