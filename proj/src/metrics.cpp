#include "wocce/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "wocce/error.hpp"

namespace wocce {

std::vector<int> solve_assignment(const Matrix& cost) {
  const auto n = static_cast<std::size_t>(cost.rows());
  if (cost.cols() != cost.rows()) throw SizeError("assignment needs a square cost matrix");
  constexpr double inf = std::numeric_limits<double>::infinity();

  // 1-based potentials u (rows), v (columns); match[j] = row owning column j.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = match[j0], j1 = 0;
      double delta = inf;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1)) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= n; ++j)
    if (match[j]) row_to_col[match[j] - 1] = static_cast<int>(j - 1);
  return row_to_col;
}

Matrix contingency(const Labels& a, const Labels& b) {
  if (a.size() != b.size()) throw SizeError("label vectors differ in length");
  Labels ra = a, rb = b;
  const int ka = relabel_by_first_occurrence(ra);
  const int kb = relabel_by_first_occurrence(rb);
  Matrix table = Matrix::Zero(ka, kb);
  for (std::size_t i = 0; i < ra.size(); ++i) table(ra[i], rb[i]) += 1.0;
  return table;
}

double accuracy(const Labels& pred, const Labels& truth) {
  if (pred.size() != truth.size()) throw SizeError("prediction and truth differ in length");
  if (pred.empty()) throw SizeError("accuracy of an empty labelling");
  Matrix table = contingency(pred, truth);
  const Eigen::Index side = std::max(table.rows(), table.cols());
  Matrix square = Matrix::Zero(side, side);
  square.topLeftCorner(table.rows(), table.cols()) = table;
  Matrix cost = Matrix::Constant(side, side, square.maxCoeff()) - square;
  auto assign = solve_assignment(cost);
  double matched = 0.0;
  for (Eigen::Index r = 0; r < side; ++r) matched += square(r, assign[static_cast<std::size_t>(r)]);
  return 100.0 * matched / static_cast<double>(pred.size());
}

double accuracy(const Partition& pred, const Labels& truth) { return accuracy(pred.labels, truth); }

double nmi(const Labels& a, const Labels& b) {
  if (a.size() != b.size()) throw SizeError("label vectors differ in length");
  if (a.empty()) throw SizeError("nmi of an empty labelling");
  Matrix table = contingency(a, b);
  const double n = static_cast<double>(a.size());
  Eigen::VectorXd pa = table.rowwise().sum() / n;
  Eigen::RowVectorXd pb = table.colwise().sum() / n;

  auto entropy = [](const auto& p) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (p(i) > 0.0) h -= p(i) * std::log(p(i));
    return h;
  };
  const double ha = entropy(pa);
  const double hb = entropy(pb);
  if (ha == 0.0 || hb == 0.0) {
    // Same set partition iff the contingency table is a permutation pattern.
    return table.rows() == table.cols() && (table.array() > 0).count() == table.rows() ? 1.0 : 0.0;
  }
  double mi = 0.0;
  for (Eigen::Index i = 0; i < table.rows(); ++i)
    for (Eigen::Index j = 0; j < table.cols(); ++j) {
      double pij = table(i, j) / n;
      if (pij > 0.0) mi += pij * std::log(pij / (pa(i) * pb(j)));
    }
  return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

}  // namespace wocce
