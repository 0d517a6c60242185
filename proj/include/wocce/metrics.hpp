#pragma once

#include <vector>

#include "wocce/dataset.hpp"
#include "wocce/partition.hpp"

namespace wocce {

/// Minimum-cost perfect assignment on a square cost matrix (Kuhn-Munkres
/// with potentials, O(n^3)). Returns the column assigned to each row.
std::vector<int> solve_assignment(const Matrix& cost);

/// Contingency counts, rows = clusters of a, columns = clusters of b.
Matrix contingency(const Labels& a, const Labels& b);

/// Percent of samples correctly classified after the best one-to-one
/// cluster-to-class matching.
double accuracy(const Labels& pred, const Labels& truth);
double accuracy(const Partition& pred, const Labels& truth);

/// I(a;b) / sqrt(H(a) H(b)), natural logs. When either entropy is 0 the
/// result is 1 for identical set partitions and 0 otherwise.
double nmi(const Labels& a, const Labels& b);

}  // namespace wocce
