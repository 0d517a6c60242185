#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wocce {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Labels = std::vector<int>;

// Feature matrix plus optional ground truth. Labels, when present, are
// contiguous 0..k_true-1 with every class occurring.
struct Dataset {
  std::string name;
  Matrix features;
  std::optional<Labels> labels;
  std::optional<int> k_true;
  bool normalized = false;

  std::size_t samples() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t dims() const { return static_cast<std::size_t>(features.cols()); }
};

// Maps arbitrary integer class ids to 0-based ids in order of first occurrence.
Labels remap_contiguous(const std::vector<long long>& raw, int* k_out = nullptr);

/// Reads a comma-separated file. A first row containing any non-numeric cell
/// is treated as a header. When has_labels is set the last column is the
/// integer class.
Dataset load_csv(const std::filesystem::path& path, bool has_labels);

void write_csv(const Dataset& ds, const std::filesystem::path& path);

/// Per-column z-score with population variance; zero-variance columns become 0.
Dataset zscore_normalize(const Dataset& ds);

/// Two interleaving unit half-circles, n/2 points each, with isotropic
/// Gaussian noise. Class 0 is the upper half-circle around the origin, class 1
/// the mirrored lower half-circle around (1, 0.5).
Dataset generate_half_ring(std::size_t n, double noise, std::uint64_t seed);

void validate(const Dataset& ds);

}  // namespace wocce
