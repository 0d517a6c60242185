#pragma once

#include <span>

#include "wocce/partition.hpp"

namespace wocce {

/// Greedy elimination similarity of two equally shaped parameter matrices.
/// Builds the row-to-row Euclidean distance table, records its maximum,
/// then repeatedly removes the row and column of the current minimum
/// (ties: lowest row, then lowest column). Returns
/// clamp(1 - sum(minima) / max, 0, 1), or 1 when the maximum is 0.
double likeness(const Matrix& a, const Matrix& b);

/// Pairwise independence. Different descriptors give 1. Same descriptor
/// gives 1 - likeness of the basic parameters, or 0 when both are empty.
/// Parameter sets of different row counts are compared on the first
/// min(m_a, m_b) rows after sorting rows lexicographically.
double bpi(const Partition& p1, const Partition& p2);

/// Mean bpi of p against every crowd member; an empty crowd gives 1.
double independence(const Partition& p, std::span<const Partition> crowd);

}  // namespace wocce
