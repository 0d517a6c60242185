#include "wocce/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "wocce/error.hpp"

namespace wocce {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

Labels remap_contiguous(const std::vector<long long>& raw, int* k_out) {
  std::map<long long, int> ids;
  Labels out;
  out.reserve(raw.size());
  for (long long v : raw) {
    auto [it, inserted] = ids.emplace(v, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  if (k_out) *k_out = static_cast<int>(ids.size());
  return out;
}

Dataset load_csv(const std::filesystem::path& path, bool has_labels) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());

  std::vector<std::vector<double>> rows;
  std::vector<long long> raw_labels;
  std::size_t width = 0;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_row(line);

    if (first_content) {
      first_content = false;
      double probe;
      bool header = false;
      for (const auto& c : cells) header |= !parse_double(c, probe);
      if (header) continue;
    }

    if (width == 0) {
      width = cells.size();
      if (has_labels && width < 2)
        throw ParseError("line " + std::to_string(line_no) + ": need at least one feature and a label");
    } else if (cells.size() != width) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                       " columns, got " + std::to_string(cells.size()));
    }

    std::size_t nfeat = has_labels ? width - 1 : width;
    std::vector<double> row(nfeat);
    for (std::size_t j = 0; j < nfeat; ++j) {
      if (!parse_double(cells[j], row[j]))
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(j + 1) +
                         ": non-numeric value '" + cells[j] + "'");
    }
    if (has_labels) {
      double lab;
      if (!parse_double(cells.back(), lab) || lab != std::floor(lab))
        throw ParseError("line " + std::to_string(line_no) + ": label '" + cells.back() +
                         "' is not an integer");
      raw_labels.push_back(static_cast<long long>(lab));
    }
    rows.push_back(std::move(row));
  }

  if (rows.size() < 2)
    throw SizeError(path.string() + ": need at least 2 rows, found " + std::to_string(rows.size()));

  Dataset ds;
  ds.name = path.stem().string();
  ds.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  if (has_labels) {
    int k = 0;
    ds.labels = remap_contiguous(raw_labels, &k);
    ds.k_true = k;
  }
  validate(ds);
  return ds;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < ds.features.cols(); ++j) {
      if (j) out << ',';
      out << ds.features(i, j);
    }
    if (ds.labels) out << ',' << (*ds.labels)[static_cast<std::size_t>(i)];
    out << '\n';
  }
}

Dataset zscore_normalize(const Dataset& ds) {
  Dataset out = ds;
  const double n = static_cast<double>(ds.features.rows());
  for (Eigen::Index j = 0; j < out.features.cols(); ++j) {
    auto col = out.features.col(j);
    double mean = col.sum() / n;
    col.array() -= mean;
    double var = col.squaredNorm() / n;
    if (var > 0.0) {
      col /= std::sqrt(var);
    } else {
      col.setZero();
    }
  }
  out.normalized = true;
  return out;
}

Dataset generate_half_ring(std::size_t n, double noise, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw SizeError("half ring needs an even sample count >= 2");
  if (noise < 0.0) throw DomainError("half ring noise must be non-negative");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::normal_distribution<double> jitter(0.0, 1.0);

  const std::size_t half = n / 2;
  Dataset ds;
  ds.name = "halfring";
  ds.features.resize(static_cast<Eigen::Index>(n), 2);
  Labels labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = angle(rng);
    auto r = static_cast<Eigen::Index>(i);
    if (i < half) {
      ds.features(r, 0) = std::cos(t);
      ds.features(r, 1) = std::sin(t);
      labels[i] = 0;
    } else {
      ds.features(r, 0) = 1.0 - std::cos(t);
      ds.features(r, 1) = 0.5 - std::sin(t);
      labels[i] = 1;
    }
  }
  if (noise > 0.0) {
    for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
      ds.features(i, 0) += noise * jitter(rng);
      ds.features(i, 1) += noise * jitter(rng);
    }
  }
  ds.labels = std::move(labels);
  ds.k_true = 2;
  return ds;
}

void validate(const Dataset& ds) {
  if (ds.features.rows() < 2) throw SizeError("dataset needs at least 2 samples");
  if (ds.features.cols() < 1) throw SizeError("dataset needs at least 1 feature");
  if (!ds.features.allFinite()) throw DomainError("dataset has non-finite feature values");
  if (ds.labels) {
    if (ds.labels->size() != ds.samples()) throw SizeError("label count differs from sample count");
    if (!ds.k_true || *ds.k_true < 1) throw DomainError("labelled dataset without k_true");
    std::vector<bool> seen(static_cast<std::size_t>(*ds.k_true), false);
    for (int l : *ds.labels) {
      if (l < 0 || l >= *ds.k_true) throw DomainError("label outside 0..k_true-1");
      seen[static_cast<std::size_t>(l)] = true;
    }
    for (bool s : seen)
      if (!s) throw DomainError("some class in 0..k_true-1 has no samples");
  }
}

}  // namespace wocce
