#include "wocce/independence.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "wocce/error.hpp"

namespace wocce {

namespace {

using Index = Eigen::Index;

Matrix sorted_prefix(const Matrix& m, Index rows) {
  std::vector<Index> order(static_cast<std::size_t>(m.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Index x, Index y) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (m(x, c) != m(y, c)) return m(x, c) < m(y, c);
    }
    return x < y;
  });
  Matrix out(rows, m.cols());
  for (Index r = 0; r < rows; ++r) out.row(r) = m.row(order[static_cast<std::size_t>(r)]);
  return out;
}

}  // namespace

double likeness(const Matrix& a, const Matrix& b) {
  if (a.size() == 0 || b.size() == 0) throw SizeError("likeness needs nonempty parameter matrices");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw SizeError("likeness needs equally shaped parameter matrices");

  const Index m = a.rows();
  Matrix table(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) table(i, j) = (a.row(i) - b.row(j)).norm();
  const double max_dis = table.maxCoeff();
  if (max_dis == 0.0) return 1.0;

  std::vector<bool> row_live(static_cast<std::size_t>(m), true), col_live(static_cast<std::size_t>(m), true);
  double total = 0.0;
  for (Index t = 0; t < m; ++t) {
    double best = std::numeric_limits<double>::infinity();
    Index bi = -1, bj = -1;
    for (Index i = 0; i < m; ++i) {
      if (!row_live[static_cast<std::size_t>(i)]) continue;
      for (Index j = 0; j < m; ++j) {
        if (col_live[static_cast<std::size_t>(j)] && table(i, j) < best) {
          best = table(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    total += best;
    row_live[static_cast<std::size_t>(bi)] = false;
    col_live[static_cast<std::size_t>(bj)] = false;
  }
  return std::clamp(1.0 - total / max_dis, 0.0, 1.0);
}

double bpi(const Partition& p1, const Partition& p2) {
  if (!(p1.descriptor == p2.descriptor)) return 1.0;
  const bool e1 = p1.basic_params.size() == 0;
  const bool e2 = p2.basic_params.size() == 0;
  if (e1 && e2) return 0.0;
  if (e1 != e2)
    throw InternalError("partitions of type '" + p1.descriptor.to_string() +
                        "' disagree on whether basic parameters exist");
  if (p1.basic_params.cols() != p2.basic_params.cols())
    throw SizeError("basic parameters have different feature counts");
  if (p1.basic_params.rows() == p2.basic_params.rows()) return 1.0 - likeness(p1.basic_params, p2.basic_params);

  const Index m = std::min(p1.basic_params.rows(), p2.basic_params.rows());
  return 1.0 - likeness(sorted_prefix(p1.basic_params, m), sorted_prefix(p2.basic_params, m));
}

double independence(const Partition& p, std::span<const Partition> crowd) {
  if (crowd.empty()) return 1.0;
  double sum = 0.0;
  for (const auto& member : crowd) sum += bpi(p, member);
  return sum / static_cast<double>(crowd.size());
}

}  // namespace wocce
