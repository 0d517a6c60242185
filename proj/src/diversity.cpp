#include "wocce/diversity.hpp"

#include <algorithm>
#include <cmath>

#include "wocce/error.hpp"

namespace wocce {

std::vector<ClusterView> clusters_of(const Partition& p) {
  std::vector<ClusterView> out(static_cast<std::size_t>(p.k));
  for (auto& c : out) c.n = p.samples();
  for (std::size_t i = 0; i < p.labels.size(); ++i) out[static_cast<std::size_t>(p.labels[i])].members.push_back(i);
  return out;
}

double apmm_raw(std::size_t cluster_size, std::size_t n, std::span<const std::size_t> partition_sizes) {
  if (cluster_size == 0 || cluster_size > n) throw SizeError("cluster size must lie in 1..n");
  const double nc = static_cast<double>(cluster_size);
  const double nn = static_cast<double>(n);
  const double num = -2.0 * nc * std::log(nn / nc);
  double den = nc * std::log(nc / nn);
  for (std::size_t s : partition_sizes) {
    if (s == 0) continue;
    den += static_cast<double>(s) * std::log(static_cast<double>(s) / nn);
  }
  if (den == 0.0) return 1.0;
  return num / den;
}

double apmm(const ClusterView& c, const Partition& p) {
  if (c.n != p.samples())
    throw SizeError("cluster is over " + std::to_string(c.n) + " samples, partition over " +
                    std::to_string(p.samples()));
  for (std::size_t i : c.members)
    if (i >= c.n) throw SizeError("cluster member index out of range");
  auto sizes = p.cluster_sizes();
  return std::clamp(apmm_raw(c.size(), c.n, sizes), 0.0, 1.0);
}

double aapmm(const ClusterView& c, std::span<const Partition> reference) {
  if (reference.empty()) throw DomainError("aapmm needs a nonempty reference set");
  double sum = 0.0;
  for (const auto& p : reference) sum += apmm(c, p);
  return sum / static_cast<double>(reference.size());
}

double a3(const Partition& p, std::span<const Partition> reference) {
  if (reference.empty()) throw DomainError("a3 needs a nonempty reference set");
  const double n = static_cast<double>(p.samples());
  double acc = 0.0;
  for (const auto& c : clusters_of(p)) acc += static_cast<double>(c.size()) * aapmm(c, reference);
  return std::clamp(acc / n, 0.0, 1.0);
}

double diversity(const Partition& p, std::span<const Partition> crowd) {
  if (crowd.empty()) return 1.0;
  return 1.0 - a3(p, crowd);
}

}  // namespace wocce
