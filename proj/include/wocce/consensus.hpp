#pragma once

#include <filesystem>
#include <span>

#include "wocce/crowd.hpp"
#include "wocce/linkage.hpp"
#include "wocce/partition.hpp"

namespace wocce {

// Pairwise co-clustering frequency, symmetric with unit diagonal.
struct CoAssociation {
  Matrix values;
  std::size_t members = 0;
};

/// C(i,j) = n_ij / m_ij, where m_ij counts members that label both i and j
/// and n_ij counts those placing them together. Negative labels mark samples
/// a member did not cluster; WOCCE members always cover every sample.
CoAssociation co_association(std::span<const Partition> members, std::size_t n);
CoAssociation co_association(const Crowd& crowd, std::size_t n);

void write_csv(const CoAssociation& c, const std::filesystem::path& path);

/// Average (UPGMA) linkage; d must be symmetric, nonnegative, zero-diagonal.
Dendrogram average_linkage(const Matrix& d);

Partition consensus_cut(const Dendrogram& dend, int k);

/// 1 - co-association, average linkage, cut at kb.
Partition wocce_consensus(std::span<const Partition> crowd, std::size_t n, int kb);
Partition wocce_consensus(const Crowd& crowd, std::size_t n, int kb);

}  // namespace wocce
