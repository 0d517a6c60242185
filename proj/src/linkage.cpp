#include "wocce/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wocce/error.hpp"

namespace wocce {

Matrix pairwise_distances(const Matrix& x, Metric metric) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  Matrix out = Matrix::Zero(n, n);
  Eigen::VectorXd norms;
  if (metric == Metric::Cosine) norms = x.rowwise().norm();

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double v = 0.0;
      switch (metric) {
        case Metric::Euclidean:
          v = (x.row(i) - x.row(j)).norm();
          break;
        case Metric::Hamming: {
          Eigen::Index diff = 0;
          for (Eigen::Index c = 0; c < d; ++c) diff += x(i, c) != x(j, c);
          v = static_cast<double>(diff) / static_cast<double>(d);
          break;
        }
        case Metric::Cosine: {
          double denom = norms(i) * norms(j);
          double sim = denom > 0.0 ? x.row(i).dot(x.row(j)) / denom : 0.0;
          v = std::max(0.0, 1.0 - sim);
          break;
        }
      }
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

namespace {

struct Agglomerator {
  Matrix d;
  Linkage linkage;
  std::size_t n;
  std::vector<bool> active;
  std::vector<int> node;
  std::vector<int> size;
  std::vector<std::size_t> nn;
  std::vector<double> nnd;

  // (distance, partner node id) ordering within one row.
  bool row_better(double dist, int id, double best_dist, int best_id) const {
    return dist < best_dist || (dist == best_dist && id < best_id);
  }

  void scan_row(std::size_t i) {
    nn[i] = n;
    nnd[i] = std::numeric_limits<double>::infinity();
    int best_id = std::numeric_limits<int>::max();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !active[j]) continue;
      double v = d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (row_better(v, node[j], nnd[i], best_id)) {
        nn[i] = j;
        nnd[i] = v;
        best_id = node[j];
      }
    }
  }

  double updated(double dki, double dkj, double dij, double ni, double nj, double nk) const {
    switch (linkage) {
      case Linkage::Single: return std::min(dki, dkj);
      case Linkage::Complete: return std::max(dki, dkj);
      case Linkage::Average: return (ni * dki + nj * dkj) / (ni + nj);
      case Linkage::Ward: return ((ni + nk) * dki + (nj + nk) * dkj - nk * dij) / (ni + nj + nk);
    }
    return 0.0;
  }
};

}  // namespace

Dendrogram agglomerate(const Matrix& dissimilarity, Linkage linkage) {
  const auto n = static_cast<std::size_t>(dissimilarity.rows());
  if (dissimilarity.cols() != dissimilarity.rows()) throw SizeError("dissimilarity matrix must be square");
  Dendrogram dend;
  dend.leaves = n;
  if (n < 2) return dend;

  Agglomerator ag{dissimilarity, linkage, n, std::vector<bool>(n, true), {}, std::vector<int>(n, 1),
                  std::vector<std::size_t>(n), std::vector<double>(n)};
  if (linkage == Linkage::Ward) ag.d = ag.d.cwiseProduct(ag.d);
  ag.node.resize(n);
  std::iota(ag.node.begin(), ag.node.end(), 0);
  for (std::size_t i = 0; i < n; ++i) ag.scan_row(i);

  dend.merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = n;
    int best_lo = 0, best_hi = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!ag.active[i] || ag.nn[i] == n) continue;
      int lo = std::min(ag.node[i], ag.node[ag.nn[i]]);
      int hi = std::max(ag.node[i], ag.node[ag.nn[i]]);
      if (a == n || ag.nnd[i] < best ||
          (ag.nnd[i] == best && (lo < best_lo || (lo == best_lo && hi < best_hi)))) {
        a = i;
        best = ag.nnd[i];
        best_lo = lo;
        best_hi = hi;
      }
    }
    std::size_t b = ag.nn[a];
    const auto ea = static_cast<Eigen::Index>(a);
    const auto eb = static_cast<Eigen::Index>(b);

    Merge m;
    m.left = best_lo;
    m.right = best_hi;
    m.height = linkage == Linkage::Ward ? std::sqrt(std::max(0.0, best)) : best;
    m.id = static_cast<int>(n + step);
    m.size = ag.size[a] + ag.size[b];
    dend.merges.push_back(m);

    const double na = ag.size[a], nb = ag.size[b], dab = ag.d(ea, eb);
    for (std::size_t k = 0; k < n; ++k) {
      if (!ag.active[k] || k == a || k == b) continue;
      const auto ek = static_cast<Eigen::Index>(k);
      double v = ag.updated(ag.d(ek, ea), ag.d(ek, eb), dab, na, nb, ag.size[k]);
      ag.d(ek, ea) = v;
      ag.d(ea, ek) = v;
    }
    ag.active[b] = false;
    ag.node[a] = m.id;
    ag.size[a] = m.size;

    for (std::size_t k = 0; k < n; ++k) {
      if (!ag.active[k] || k == a) continue;
      if (ag.nn[k] == a || ag.nn[k] == b) {
        ag.scan_row(k);
      } else {
        double v = ag.d(static_cast<Eigen::Index>(k), ea);
        if (ag.row_better(v, m.id, ag.nnd[k], ag.node[ag.nn[k]])) {
          ag.nn[k] = a;
          ag.nnd[k] = v;
        }
      }
    }
    ag.scan_row(a);
  }
  return dend;
}

Labels cut_dendrogram(const Dendrogram& dend, int k) {
  const std::size_t n = dend.leaves;
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw SizeError("cut needs 1 <= k <= n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");

  std::vector<std::size_t> order(dend.merges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return dend.merges[x].height < dend.merges[y].height;
  });
  const std::size_t keep = n - static_cast<std::size_t>(k);

  // Any leaf of each node stands in for it in the union-find.
  std::vector<std::size_t> leaf_of(n + dend.merges.size());
  std::iota(leaf_of.begin(), leaf_of.begin() + static_cast<std::ptrdiff_t>(n), 0);
  for (const auto& m : dend.merges) leaf_of[static_cast<std::size_t>(m.id)] = leaf_of[static_cast<std::size_t>(m.left)];

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& m = dend.merges[order[i]];
    auto ra = find(leaf_of[static_cast<std::size_t>(m.left)]);
    auto rb = find(leaf_of[static_cast<std::size_t>(m.right)]);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  Labels labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(find(i));
  relabel_by_first_occurrence(labels);
  return labels;
}

}  // namespace wocce
