#include "wocce/consensus.hpp"

#include <fstream>
#include <iomanip>

#include "wocce/error.hpp"

namespace wocce {

CoAssociation co_association(std::span<const Partition> members, std::size_t n) {
  if (members.empty()) throw DomainError("co-association needs a nonempty crowd");
  for (const auto& p : members)
    if (p.samples() != n) throw SizeError("crowd member does not cover " + std::to_string(n) + " samples");

  const auto en = static_cast<Eigen::Index>(n);
  // Integer counts keep the matrix exactly symmetric with entries that are
  // exact multiples of 1/M.
  std::vector<std::uint32_t> together(n * n, 0), both(n * n, 0);
  for (const auto& p : members) {
    for (std::size_t i = 0; i < n; ++i) {
      const int li = p.labels[i];
      if (li < 0) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        const int lj = p.labels[j];
        if (lj < 0) continue;
        ++both[i * n + j];
        together[i * n + j] += li == lj;
      }
    }
  }

  CoAssociation out;
  out.members = members.size();
  out.values = Matrix::Identity(en, en);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = both[i * n + j] ? static_cast<double>(together[i * n + j]) / static_cast<double>(both[i * n + j]) : 0.0;
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      out.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return out;
}

CoAssociation co_association(const Crowd& crowd, std::size_t n) {
  return co_association(std::span<const Partition>(crowd.members), n);
}

void write_csv(const CoAssociation& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < c.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.values.cols(); ++j) {
      if (j) out << ',';
      out << c.values(i, j);
    }
    out << '\n';
  }
}

Dendrogram average_linkage(const Matrix& d) {
  if (d.rows() != d.cols()) throw SizeError("dissimilarity matrix must be square");
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (d(i, i) != 0.0) throw DomainError("dissimilarity diagonal must be zero");
    for (Eigen::Index j = i + 1; j < d.cols(); ++j) {
      if (d(i, j) != d(j, i)) throw DomainError("dissimilarity matrix must be symmetric");
      if (d(i, j) < 0.0) throw DomainError("dissimilarity must be nonnegative");
    }
  }
  return agglomerate(d, Linkage::Average);
}

Partition consensus_cut(const Dendrogram& dend, int k) {
  return make_partition(cut_dendrogram(dend, k), AlgorithmDescriptor::consensus(), Matrix(), 0);
}

Partition wocce_consensus(std::span<const Partition> crowd, std::size_t n, int kb) {
  if (kb < 1 || static_cast<std::size_t>(kb) > n) throw SizeError("consensus cluster count outside 1..n");
  auto co = co_association(crowd, n);
  Matrix dissimilarity = Matrix::Ones(co.values.rows(), co.values.cols()) - co.values;
  return consensus_cut(average_linkage(dissimilarity), kb);
}

Partition wocce_consensus(const Crowd& crowd, std::size_t n, int kb) {
  return wocce_consensus(std::span<const Partition>(crowd.members), n, kb);
}

}  // namespace wocce
