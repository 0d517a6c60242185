#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wocce/partition.hpp"

namespace wocce {

// One cluster C of some partition over n samples.
struct ClusterView {
  std::vector<std::size_t> members;
  std::size_t n = 0;

  std::size_t size() const { return members.size(); }
};

std::vector<ClusterView> clusters_of(const Partition& p);

/// Cluster-versus-partition similarity
///   -2 nc log(n/nc) / (nc log(nc/n) + sum_i ni log(ni/n))
/// before clamping. The 0/0 case (C covers everything, p has one cluster) is 1.
double apmm_raw(std::size_t cluster_size, std::size_t n, std::span<const std::size_t> partition_sizes);

/// apmm_raw clamped to [0, 1].
double apmm(const ClusterView& c, const Partition& p);

/// Mean apmm of c over a nonempty reference set.
double aapmm(const ClusterView& c, std::span<const Partition> reference);

/// Size-weighted mean of aapmm over the clusters of p.
double a3(const Partition& p, std::span<const Partition> reference);

/// 1 - a3(p, crowd); an empty crowd gives 1.
double diversity(const Partition& p, std::span<const Partition> crowd);

}  // namespace wocce
