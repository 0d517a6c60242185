#include "wocce/partition.hpp"

#include <charconv>
#include <unordered_map>

#include "wocce/error.hpp"

namespace wocce {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Linkage parse_linkage(std::string_view s) {
  if (s == "single") return Linkage::Single;
  if (s == "average") return Linkage::Average;
  if (s == "complete") return Linkage::Complete;
  if (s == "ward") return Linkage::Ward;
  throw ConfigError("unknown linkage '" + std::string(s) + "'");
}

Metric parse_metric(std::string_view s) {
  if (s == "euclidean") return Metric::Euclidean;
  if (s == "hamming") return Metric::Hamming;
  if (s == "cosine") return Metric::Cosine;
  throw ConfigError("unknown metric '" + std::string(s) + "'");
}

const char* linkage_name(Linkage l) {
  switch (l) {
    case Linkage::Single: return "single";
    case Linkage::Average: return "average";
    case Linkage::Complete: return "complete";
    case Linkage::Ward: return "ward";
  }
  return "?";
}

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::Euclidean: return "euclidean";
    case Metric::Hamming: return "hamming";
    case Metric::Cosine: return "cosine";
  }
  return "?";
}

}  // namespace

AlgorithmDescriptor AlgorithmDescriptor::kmeans() { return {Family::KMeans, {}, {}, {}, true}; }

AlgorithmDescriptor AlgorithmDescriptor::fuzzy_cmeans() {
  return {Family::FuzzyCMeans, {}, {}, {}, true};
}

AlgorithmDescriptor AlgorithmDescriptor::gaussian_mixture() {
  return {Family::GaussianMixture, {}, {}, {}, true};
}

AlgorithmDescriptor AlgorithmDescriptor::subtractive(double radius) {
  return {Family::Subtractive, {}, {}, radius, false};
}

AlgorithmDescriptor AlgorithmDescriptor::hierarchical(Linkage linkage, Metric metric) {
  return {Family::Hierarchical, linkage, metric, {}, false};
}

AlgorithmDescriptor AlgorithmDescriptor::consensus() {
  return {Family::Consensus, {}, {}, {}, false};
}

AlgorithmDescriptor AlgorithmDescriptor::parse(std::string_view text) {
  auto parts = split(strip(text), ':');
  auto head = parts[0];
  if (head == "kmeans" && parts.size() == 1) return kmeans();
  if (head == "fcm" && parts.size() == 1) return fuzzy_cmeans();
  if (head == "gmm" && parts.size() == 1) return gaussian_mixture();
  if (head == "subtractive" && parts.size() <= 2) {
    double r = 0.5;
    if (parts.size() == 2) {
      auto [ptr, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), r);
      if (ec != std::errc() || ptr != parts[1].data() + parts[1].size() || !(r > 0.0))
        throw ConfigError("bad subtractive radius in '" + std::string(text) + "'");
    }
    return subtractive(r);
  }
  if (head == "hier" && parts.size() == 3) return hierarchical(parse_linkage(parts[1]), parse_metric(parts[2]));
  throw ConfigError("unknown algorithm descriptor '" + std::string(text) + "'");
}

std::string AlgorithmDescriptor::to_string() const {
  switch (family) {
    case Family::KMeans: return "kmeans";
    case Family::FuzzyCMeans: return "fcm";
    case Family::GaussianMixture: return "gmm";
    case Family::Subtractive: {
      char buf[32];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, radius.value_or(0.5));
      return "subtractive:" + std::string(buf, ptr);
    }
    case Family::Hierarchical:
      return std::string("hier:") + linkage_name(*linkage) + ":" + metric_name(*metric);
    case Family::Consensus: return "consensus";
  }
  return "?";
}

std::vector<AlgorithmDescriptor> parse_roster(std::string_view comma_list) {
  std::vector<AlgorithmDescriptor> roster;
  for (auto item : split(comma_list, ',')) {
    item = strip(item);
    if (item.empty()) continue;
    roster.push_back(AlgorithmDescriptor::parse(item));
  }
  return roster;
}

std::vector<AlgorithmDescriptor> default_roster() {
  std::vector<AlgorithmDescriptor> roster = {
      AlgorithmDescriptor::kmeans(), AlgorithmDescriptor::fuzzy_cmeans(),
      AlgorithmDescriptor::gaussian_mixture(), AlgorithmDescriptor::subtractive(0.5)};
  for (auto l : {Linkage::Single, Linkage::Average, Linkage::Complete, Linkage::Ward})
    for (auto m : {Metric::Euclidean, Metric::Hamming, Metric::Cosine})
      roster.push_back(AlgorithmDescriptor::hierarchical(l, m));
  return roster;
}

std::vector<std::size_t> Partition::cluster_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

int relabel_by_first_occurrence(Labels& labels) {
  std::unordered_map<int, int> ids;
  for (int& l : labels) {
    auto [it, inserted] = ids.emplace(l, static_cast<int>(ids.size()));
    l = it->second;
  }
  return static_cast<int>(ids.size());
}

Partition make_partition(Labels labels, AlgorithmDescriptor desc, Matrix basic_params,
                         std::uint64_t seed) {
  Partition p;
  p.k = relabel_by_first_occurrence(labels);
  p.labels = std::move(labels);
  p.descriptor = desc;
  p.basic_params = std::move(basic_params);
  p.source_seed = seed;
  return p;
}

}  // namespace wocce
