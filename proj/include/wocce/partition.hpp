#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wocce/dataset.hpp"

namespace wocce {

enum class Family { KMeans, FuzzyCMeans, GaussianMixture, Subtractive, Hierarchical, Consensus };
enum class Linkage { Single, Average, Complete, Ward };
enum class Metric { Euclidean, Hamming, Cosine };

// Identifies "the same algorithm" for independence checks: two partitions
// come from the same algorithm type iff their descriptors compare equal.
struct AlgorithmDescriptor {
  Family family = Family::KMeans;
  std::optional<Linkage> linkage;  // Hierarchical only
  std::optional<Metric> metric;    // Hierarchical only
  std::optional<double> radius;    // Subtractive only
  bool stochastic = true;

  bool operator==(const AlgorithmDescriptor&) const = default;

  static AlgorithmDescriptor kmeans();
  static AlgorithmDescriptor fuzzy_cmeans();
  static AlgorithmDescriptor gaussian_mixture();
  static AlgorithmDescriptor subtractive(double radius = 0.5);
  static AlgorithmDescriptor hierarchical(Linkage linkage, Metric metric);
  static AlgorithmDescriptor consensus();

  /// Parses roster strings such as "kmeans", "fcm", "gmm", "subtractive:0.5"
  /// and "hier:ward:cosine".
  static AlgorithmDescriptor parse(std::string_view text);
  std::string to_string() const;
};

std::vector<AlgorithmDescriptor> parse_roster(std::string_view comma_list);
std::vector<AlgorithmDescriptor> default_roster();

struct Partition {
  Labels labels;
  int k = 0;
  AlgorithmDescriptor descriptor;
  Matrix basic_params;  // initial parameters, one row per vector; may be empty
  std::uint64_t source_seed = 0;

  std::size_t samples() const { return labels.size(); }
  std::vector<std::size_t> cluster_sizes() const;
};

/// Relabels clusters to 0..k-1 by order of first occurrence. Returns k.
int relabel_by_first_occurrence(Labels& labels);

Partition make_partition(Labels labels, AlgorithmDescriptor desc, Matrix basic_params,
                         std::uint64_t seed);

}  // namespace wocce
