#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "wocce/dataset.hpp"
#include "wocce/linkage.hpp"
#include "wocce/partition.hpp"

namespace wocce {

struct KMeansOptions {
  int max_iterations = 300;
};

struct FcmOptions {
  double fuzzifier = 2.0;
  double tolerance = 1e-5;
  int max_iterations = 200;
};

struct GmmOptions {
  double regularization = 1e-6;
  double tolerance = 1e-6;
  int max_iterations = 200;
};

struct KMeansFit {
  Labels labels;
  Matrix centers;
  Matrix initial_centers;
  std::vector<double> sse;  // after every Lloyd iteration
  int iterations = 0;
};

struct FcmFit {
  Labels labels;
  Matrix centers;
  Matrix initial_centers;
  Matrix memberships;             // n x k
  std::vector<double> objective;  // fuzzy objective after every center update
};

struct GmmFit {
  Labels labels;
  Matrix means;
  Matrix initial_means;
  Eigen::VectorXd weights;
  std::vector<Matrix> covariances;
  std::vector<double> log_likelihood;  // one value per E-step
};

struct SubtractiveFit {
  Labels labels;
  Matrix centers;
};

/// k distinct data rows chosen uniformly at random.
Matrix sample_rows(const Matrix& x, int k, std::uint64_t seed);

/// Lloyd iterations from the given starting centers. Empty clusters are
/// reseeded at the point farthest from its current center.
KMeansFit kmeans_from_centers(const Matrix& x, const Matrix& centers, const KMeansOptions& opt = {});
FcmFit fcm_from_centers(const Matrix& x, const Matrix& centers, const FcmOptions& opt = {});

/// EM with full covariances, initialized from the given k-means result.
/// Throws DegenerateFitError when a component collapses.
GmmFit gmm_from_kmeans(const Matrix& x, const KMeansFit& init, const GmmOptions& opt = {});

SubtractiveFit subtractive_fit(const Matrix& x, double radius);

Partition kmeans(const Dataset& ds, int k, std::uint64_t seed);
Partition fuzzy_cmeans(const Dataset& ds, int k, std::uint64_t seed);
Partition gmm_em(const Dataset& ds, int k, std::uint64_t seed);
Partition hierarchical(const Dataset& ds, Linkage linkage, Metric metric, int k);
Partition subtractive(const Dataset& ds, double radius = 0.5);

// Runs base algorithms against one dataset. Deterministic work (distance
// matrices, dendrograms, subtractive centers) is memoized, so repeated
// candidates from the same hierarchical descriptor only pay for the cut.
// Not thread-safe; use one runner per thread.
class BaseRunner {
 public:
  explicit BaseRunner(const Dataset& ds);

  Partition run(const AlgorithmDescriptor& desc, int k, std::uint64_t seed);
  const Dataset& dataset() const { return ds_; }

 private:
  const Dendrogram& dendrogram(Linkage linkage, Metric metric);

  const Dataset& ds_;
  std::map<Metric, Matrix> distances_;
  std::map<std::pair<Linkage, Metric>, Dendrogram> dendrograms_;
  std::map<double, Partition> subtractive_;
};

/// Dispatches on desc.family; k must satisfy 2 <= k <= n except for
/// Subtractive, which finds its own cluster count.
Partition run_base(const AlgorithmDescriptor& desc, const Dataset& ds, int k, std::uint64_t seed);

}  // namespace wocce
