#include "wocce/base_clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "wocce/error.hpp"
#include "wocce/seeds.hpp"

namespace wocce {

namespace {

using Index = Eigen::Index;

void check_k(const Matrix& x, int k) {
  if (k < 1 || k > x.rows())
    throw SizeError("cluster count " + std::to_string(k) + " outside 1.." + std::to_string(x.rows()));
}

std::size_t nearest(const Matrix& centers, const Eigen::RowVectorXd& point, double* dist2 = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Index c = 0; c < centers.rows(); ++c) {
    double v = (centers.row(c) - point).squaredNorm();
    if (v < best_d) {
      best_d = v;
      best = static_cast<std::size_t>(c);
    }
  }
  if (dist2) *dist2 = best_d;
  return best;
}

Labels argmax_rows(const Matrix& m) {
  Labels out(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) {
    Index best = 0;
    m.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

// Column-wise rescale to [0, 1]; constant columns map to 0.
Matrix unit_box(const Matrix& x) {
  Matrix out = x;
  for (Index j = 0; j < x.cols(); ++j) {
    double lo = x.col(j).minCoeff();
    double hi = x.col(j).maxCoeff();
    if (hi > lo) {
      out.col(j) = (x.col(j).array() - lo) / (hi - lo);
    } else {
      out.col(j).setZero();
    }
  }
  return out;
}

}  // namespace

Matrix sample_rows(const Matrix& x, int k, std::uint64_t seed) {
  check_k(x, k);
  std::mt19937_64 rng(seed);
  std::vector<Index> idx(static_cast<std::size_t>(x.rows()));
  std::iota(idx.begin(), idx.end(), 0);
  Matrix out(k, x.cols());
  for (int c = 0; c < k; ++c) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(c), idx.size() - 1);
    std::swap(idx[static_cast<std::size_t>(c)], idx[pick(rng)]);
    out.row(c) = x.row(idx[static_cast<std::size_t>(c)]);
  }
  return out;
}

KMeansFit kmeans_from_centers(const Matrix& x, const Matrix& centers, const KMeansOptions& opt) {
  const Index n = x.rows();
  const Index k = centers.rows();
  check_k(x, static_cast<int>(k));

  KMeansFit fit;
  fit.initial_centers = centers;
  fit.centers = centers;
  fit.labels.assign(static_cast<std::size_t>(n), -1);
  std::vector<double> dist2(static_cast<std::size_t>(n));

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      auto c = static_cast<int>(nearest(fit.centers, x.row(i), &dist2[static_cast<std::size_t>(i)]));
      if (c != fit.labels[static_cast<std::size_t>(i)]) {
        fit.labels[static_cast<std::size_t>(i)] = c;
        changed = true;
      }
    }

    // Empty-cluster repair keeps k fixed.
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (int l : fit.labels) ++counts[static_cast<std::size_t>(l)];
    for (Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < dist2.size(); ++i) {
        if (counts[static_cast<std::size_t>(fit.labels[i])] > 1 && dist2[i] > far_d) {
          far_d = dist2[i];
          far = i;
        }
      }
      if (far_d < 0.0) break;
      --counts[static_cast<std::size_t>(fit.labels[far])];
      fit.labels[far] = static_cast<int>(c);
      dist2[far] = 0.0;
      ++counts[static_cast<std::size_t>(c)];
      changed = true;
    }

    if (!changed && iter > 0) break;

    Matrix sums = Matrix::Zero(k, x.cols());
    for (Index i = 0; i < n; ++i) sums.row(fit.labels[static_cast<std::size_t>(i)]) += x.row(i);
    for (Index c = 0; c < k; ++c)
      if (counts[static_cast<std::size_t>(c)] > 0)
        fit.centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);

    double sse = 0.0;
    for (Index i = 0; i < n; ++i) sse += (x.row(i) - fit.centers.row(fit.labels[static_cast<std::size_t>(i)])).squaredNorm();
    fit.sse.push_back(sse);
    fit.iterations = iter + 1;
  }
  return fit;
}

FcmFit fcm_from_centers(const Matrix& x, const Matrix& centers, const FcmOptions& opt) {
  const Index n = x.rows();
  const Index k = centers.rows();
  check_k(x, static_cast<int>(k));
  const double expo = 2.0 / (opt.fuzzifier - 1.0);

  FcmFit fit;
  fit.initial_centers = centers;
  fit.centers = centers;
  fit.memberships = Matrix::Zero(n, k);

  auto update_memberships = [&](Matrix& u) {
    for (Index i = 0; i < n; ++i) {
      Eigen::VectorXd d(k);
      Index zero_at = -1;
      for (Index c = 0; c < k; ++c) {
        d(c) = (x.row(i) - fit.centers.row(c)).norm();
        if (d(c) == 0.0 && zero_at < 0) zero_at = c;
      }
      if (zero_at >= 0) {
        u.row(i).setZero();
        u(i, zero_at) = 1.0;
        continue;
      }
      for (Index c = 0; c < k; ++c) {
        double s = 0.0;
        for (Index o = 0; o < k; ++o) s += std::pow(d(c) / d(o), expo);
        u(i, c) = 1.0 / s;
      }
    }
  };

  update_memberships(fit.memberships);
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    Matrix w = fit.memberships.array().pow(opt.fuzzifier);
    for (Index c = 0; c < k; ++c) {
      double mass = w.col(c).sum();
      if (mass > 0.0) fit.centers.row(c) = (w.col(c).transpose() * x) / mass;
    }
    double obj = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index c = 0; c < k; ++c) obj += w(i, c) * (x.row(i) - fit.centers.row(c)).squaredNorm();
    fit.objective.push_back(obj);

    Matrix next(n, k);
    update_memberships(next);
    double delta = (next - fit.memberships).cwiseAbs().maxCoeff();
    fit.memberships = std::move(next);
    if (delta < opt.tolerance) break;
  }
  fit.labels = argmax_rows(fit.memberships);
  return fit;
}

GmmFit gmm_from_kmeans(const Matrix& x, const KMeansFit& init, const GmmOptions& opt) {
  const Index n = x.rows();
  const Index d = x.cols();
  const Index k = init.centers.rows();
  const double log2pi = std::log(2.0 * std::numbers::pi);

  GmmFit fit;
  fit.initial_means = init.centers;
  fit.means = init.centers;
  fit.weights = Eigen::VectorXd::Zero(k);
  fit.covariances.assign(static_cast<std::size_t>(k), Matrix::Zero(d, d));

  Matrix resp = Matrix::Zero(n, k);
  for (Index i = 0; i < n; ++i) resp(i, init.labels[static_cast<std::size_t>(i)]) = 1.0;

  auto m_step = [&]() {
    for (Index c = 0; c < k; ++c) {
      double nk = resp.col(c).sum();
      if (!(nk > 1e-10)) throw DegenerateFitError("gaussian mixture component lost all responsibility");
      fit.weights(c) = nk / static_cast<double>(n);
      Eigen::RowVectorXd mu = (resp.col(c).transpose() * x) / nk;
      fit.means.row(c) = mu;
      Matrix centered = x.rowwise() - mu;
      Matrix cov = (centered.transpose() * resp.col(c).asDiagonal() * centered) / nk;
      cov.diagonal().array() += opt.regularization;
      fit.covariances[static_cast<std::size_t>(c)] = std::move(cov);
    }
  };

  // Responsibilities from the current parameters; returns the log-likelihood.
  auto e_step = [&]() {
    Matrix logp(n, k);
    for (Index c = 0; c < k; ++c) {
      Eigen::LLT<Eigen::MatrixXd> llt(fit.covariances[static_cast<std::size_t>(c)]);
      if (llt.info() != Eigen::Success) throw DegenerateFitError("gaussian mixture covariance is not positive definite");
      Eigen::MatrixXd lower = llt.matrixL();
      double logdet = 2.0 * lower.diagonal().array().log().sum();
      Eigen::MatrixXd centered = (x.rowwise() - fit.means.row(c)).transpose();
      Eigen::MatrixXd z = llt.matrixL().solve(centered);
      Eigen::VectorXd maha = z.colwise().squaredNorm();
      for (Index i = 0; i < n; ++i)
        logp(i, c) = std::log(fit.weights(c)) - 0.5 * (static_cast<double>(d) * log2pi + logdet + maha(i));
    }
    double ll = 0.0;
    for (Index i = 0; i < n; ++i) {
      double mx = logp.row(i).maxCoeff();
      double s = (logp.row(i).array() - mx).exp().sum();
      double lse = mx + std::log(s);
      ll += lse;
      resp.row(i) = (logp.row(i).array() - lse).exp();
    }
    if (!std::isfinite(ll)) throw DegenerateFitError("gaussian mixture log-likelihood is not finite");
    return ll;
  };

  m_step();
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    double ll = e_step();
    bool done = !fit.log_likelihood.empty() && ll - fit.log_likelihood.back() < opt.tolerance;
    fit.log_likelihood.push_back(ll);
    if (done) break;
    m_step();
  }
  fit.labels = argmax_rows(resp);
  return fit;
}

SubtractiveFit subtractive_fit(const Matrix& x, double radius) {
  if (!(radius > 0.0)) throw DomainError("subtractive radius must be positive");
  constexpr double accept_ratio = 0.5;
  constexpr double reject_ratio = 0.15;
  constexpr double squash = 1.5;

  const Matrix z = unit_box(x);
  const Index n = z.rows();
  const double alpha = 4.0 / (radius * radius);
  const double beta = 4.0 / (squash * radius * squash * radius);

  Eigen::VectorXd potential = Eigen::VectorXd::Zero(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) potential(i) += std::exp(-alpha * (z.row(i) - z.row(j)).squaredNorm());

  std::vector<Index> chosen;
  Index first = 0;
  const double top = potential.maxCoeff(&first);
  Index cand = first;
  while (true) {
    double p = potential(cand);
    if (!(p > 0.0)) break;
    bool accept = false;
    if (chosen.empty() || p > accept_ratio * top) {
      accept = true;
    } else if (p < reject_ratio * top) {
      break;
    } else {
      double dmin = std::numeric_limits<double>::infinity();
      for (Index c : chosen) dmin = std::min(dmin, (z.row(cand) - z.row(c)).norm());
      if (dmin / radius + p / top >= 1.0) {
        accept = true;
      } else {
        potential(cand) = 0.0;
      }
    }
    if (accept) {
      chosen.push_back(cand);
      for (Index i = 0; i < n; ++i) potential(i) -= p * std::exp(-beta * (z.row(i) - z.row(cand)).squaredNorm());
    }
    if (static_cast<Index>(chosen.size()) >= n) break;
    potential.maxCoeff(&cand);
  }
  if (chosen.empty()) throw DegenerateFitError("subtractive clustering found no center");

  SubtractiveFit fit;
  Matrix scaled_centers(static_cast<Index>(chosen.size()), x.cols());
  fit.centers.resize(static_cast<Index>(chosen.size()), x.cols());
  for (std::size_t c = 0; c < chosen.size(); ++c) {
    scaled_centers.row(static_cast<Index>(c)) = z.row(chosen[c]);
    fit.centers.row(static_cast<Index>(c)) = x.row(chosen[c]);
  }
  fit.labels.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) fit.labels[static_cast<std::size_t>(i)] = static_cast<int>(nearest(scaled_centers, z.row(i)));
  return fit;
}

Partition kmeans(const Dataset& ds, int k, std::uint64_t seed) {
  auto fit = kmeans_from_centers(ds.features, sample_rows(ds.features, k, seed));
  return make_partition(std::move(fit.labels), AlgorithmDescriptor::kmeans(), std::move(fit.initial_centers), seed);
}

Partition fuzzy_cmeans(const Dataset& ds, int k, std::uint64_t seed) {
  auto fit = fcm_from_centers(ds.features, sample_rows(ds.features, k, seed));
  return make_partition(std::move(fit.labels), AlgorithmDescriptor::fuzzy_cmeans(), std::move(fit.initial_centers), seed);
}

Partition gmm_em(const Dataset& ds, int k, std::uint64_t seed) {
  std::uint64_t attempt_seed = seed;
  for (int attempt = 0;; ++attempt) {
    try {
      auto init = kmeans_from_centers(ds.features, sample_rows(ds.features, k, attempt_seed));
      auto fit = gmm_from_kmeans(ds.features, init);
      return make_partition(std::move(fit.labels), AlgorithmDescriptor::gaussian_mixture(),
                            std::move(fit.initial_means), seed);
    } catch (const DegenerateFitError&) {
      if (attempt > 0) throw;
      attempt_seed = derive_seed(seed, 0x9e3779b9ULL);
    }
  }
}

Partition hierarchical(const Dataset& ds, Linkage linkage, Metric metric, int k) {
  check_k(ds.features, k);
  auto dend = agglomerate(pairwise_distances(ds.features, metric), linkage);
  return make_partition(cut_dendrogram(dend, k), AlgorithmDescriptor::hierarchical(linkage, metric), Matrix(), 0);
}

Partition subtractive(const Dataset& ds, double radius) {
  auto fit = subtractive_fit(ds.features, radius);
  // Deterministic: no basic parameters. The centers stay available from subtractive_fit.
  return make_partition(std::move(fit.labels), AlgorithmDescriptor::subtractive(radius), Matrix(), 0);
}

BaseRunner::BaseRunner(const Dataset& ds) : ds_(ds) {}

const Dendrogram& BaseRunner::dendrogram(Linkage linkage, Metric metric) {
  auto key = std::make_pair(linkage, metric);
  auto it = dendrograms_.find(key);
  if (it != dendrograms_.end()) return it->second;
  auto dit = distances_.find(metric);
  if (dit == distances_.end()) dit = distances_.emplace(metric, pairwise_distances(ds_.features, metric)).first;
  return dendrograms_.emplace(key, agglomerate(dit->second, linkage)).first->second;
}

Partition BaseRunner::run(const AlgorithmDescriptor& desc, int k, std::uint64_t seed) {
  const auto n = static_cast<int>(ds_.samples());
  if (desc.family != Family::Subtractive && (k < 2 || k > n))
    throw SizeError("requested cluster count " + std::to_string(k) + " outside 2.." + std::to_string(n));

  switch (desc.family) {
    case Family::KMeans: return kmeans(ds_, k, seed);
    case Family::FuzzyCMeans: return fuzzy_cmeans(ds_, k, seed);
    case Family::GaussianMixture: return gmm_em(ds_, k, seed);
    case Family::Hierarchical: {
      if (!desc.linkage || !desc.metric) throw ConfigError("hierarchical descriptor needs linkage and metric");
      const auto& dend = dendrogram(*desc.linkage, *desc.metric);
      return make_partition(cut_dendrogram(dend, k), desc, Matrix(), seed);
    }
    case Family::Subtractive: {
      double r = desc.radius.value_or(0.5);
      auto it = subtractive_.find(r);
      if (it == subtractive_.end()) it = subtractive_.emplace(r, subtractive(ds_, r)).first;
      Partition p = it->second;
      p.source_seed = seed;
      return p;
    }
    case Family::Consensus: break;
  }
  throw ConfigError("'" + desc.to_string() + "' is not a base algorithm");
}

Partition run_base(const AlgorithmDescriptor& desc, const Dataset& ds, int k, std::uint64_t seed) {
  BaseRunner runner(ds);
  return runner.run(desc, k, seed);
}

}  // namespace wocce
