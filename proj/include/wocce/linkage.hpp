#pragma once

#include <cstddef>
#include <vector>

#include "wocce/dataset.hpp"
#include "wocce/partition.hpp"

namespace wocce {

// Node ids follow the usual convention: leaves are 0..n-1 and the i-th merge
// creates node n+i.
struct Merge {
  int left = 0;
  int right = 0;
  double height = 0.0;
  int id = 0;
  int size = 0;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;
};

/// Pairwise distance matrix of the rows of x.
///   Euclidean: L2 norm.
///   Hamming:   fraction of coordinates that differ exactly.
///   Cosine:    1 - cos(angle); a zero vector has similarity 0 with everything.
Matrix pairwise_distances(const Matrix& x, Metric metric);

/// Agglomerative clustering with Lance-Williams updates on a symmetric
/// dissimilarity matrix. Among equal dissimilarities the pair with the
/// smallest (min node id, max node id) merges first. Ward works on squared
/// input values and reports square-rooted heights.
Dendrogram agglomerate(const Matrix& dissimilarity, Linkage linkage);

/// Undoes the k-1 highest merges (ties: later merges are undone first) and
/// returns the resulting flat labels, numbered by first occurrence.
Labels cut_dendrogram(const Dendrogram& dend, int k);

}  // namespace wocce
