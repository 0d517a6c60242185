#include "wocce/wocce.h"

#include <exception>
#include <memory>
#include <new>
#include <string>

#include "wocce/consensus.hpp"
#include "wocce/crowd.hpp"
#include "wocce/dataset.hpp"
#include "wocce/error.hpp"
#include "wocce/experiment.hpp"
#include "wocce/metrics.hpp"

struct wocce_dataset {
  wocce::Dataset ds;
};

struct wocce_crowd {
  wocce::Crowd crowd;
  std::size_t samples = 0;
  std::string log;
};

struct wocce_config {
  wocce::ExperimentConfig cfg;
};

struct wocce_report {
  wocce::ExperimentConfig cfg;
  std::vector<wocce::ExperimentReport> points;
  std::string json;
};

namespace {

thread_local std::string last_error;

wocce_status fail(wocce_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
wocce_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return WOCCE_OK;
  } catch (const wocce::Error& e) {
    return fail(static_cast<wocce_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(WOCCE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WOCCE_ERR_UNKNOWN, e.what());
  } catch (...) {
    return fail(WOCCE_ERR_UNKNOWN, "unknown exception");
  }
}

wocce::Labels to_labels(const int32_t* p, size_t n) { return wocce::Labels(p, p + n); }

void copy_labels(const wocce::Labels& labels, int32_t* out) {
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = labels[i];
}

}  // namespace

#define WOCCE_CHECK_ARG(cond)                                                        \
  do {                                                                               \
    if (!(cond)) return fail(WOCCE_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

extern "C" {

const char* wocce_version(void) { return "1.0.0"; }

const char* wocce_last_error(void) { return last_error.c_str(); }

const char* wocce_status_name(wocce_status status) {
  switch (status) {
    case WOCCE_OK: return "ok";
    case WOCCE_ERR_PARSE: return "parse error";
    case WOCCE_ERR_SIZE: return "size error";
    case WOCCE_ERR_CONFIG: return "configuration error";
    case WOCCE_ERR_DOMAIN: return "domain error";
    case WOCCE_ERR_DEGENERATE_FIT: return "degenerate fit";
    case WOCCE_ERR_NO_WISE_CROWD: return "no wise crowd";
    case WOCCE_ERR_INTERNAL: return "internal error";
    case WOCCE_ERR_IO: return "i/o error";
    case WOCCE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case WOCCE_ERR_UNKNOWN: return "unknown error";
  }
  return "unrecognized status";
}

wocce_status wocce_dataset_load_csv(const char* path, int has_labels, wocce_dataset** out) {
  WOCCE_CHECK_ARG(path && out);
  return guarded([&] { *out = new wocce_dataset{wocce::load_csv(path, has_labels != 0)}; });
}

wocce_status wocce_dataset_half_ring(size_t n, double noise, uint64_t seed, wocce_dataset** out) {
  WOCCE_CHECK_ARG(out);
  return guarded([&] { *out = new wocce_dataset{wocce::generate_half_ring(n, noise, seed)}; });
}

wocce_status wocce_dataset_normalize(wocce_dataset* ds) {
  WOCCE_CHECK_ARG(ds);
  return guarded([&] { ds->ds = wocce::zscore_normalize(ds->ds); });
}

wocce_status wocce_dataset_shape(const wocce_dataset* ds, size_t* n, size_t* d, int* k_true) {
  WOCCE_CHECK_ARG(ds);
  if (n) *n = ds->ds.samples();
  if (d) *d = ds->ds.dims();
  if (k_true) *k_true = ds->ds.k_true.value_or(0);
  last_error.clear();
  return WOCCE_OK;
}

wocce_status wocce_dataset_write_csv(const wocce_dataset* ds, const char* path) {
  WOCCE_CHECK_ARG(ds && path);
  return guarded([&] { wocce::write_csv(ds->ds, path); });
}

void wocce_dataset_free(wocce_dataset* ds) { delete ds; }

wocce_status wocce_accuracy(const int32_t* pred, const int32_t* truth, size_t n, double* out_percent) {
  WOCCE_CHECK_ARG(pred && truth && out_percent && n > 0);
  return guarded([&] { *out_percent = wocce::accuracy(to_labels(pred, n), to_labels(truth, n)); });
}

wocce_status wocce_nmi(const int32_t* a, const int32_t* b, size_t n, double* out) {
  WOCCE_CHECK_ARG(a && b && out && n > 0);
  return guarded([&] { *out = wocce::nmi(to_labels(a, n), to_labels(b, n)); });
}

wocce_status wocce_consensus_labels(const int32_t* labels, size_t members, size_t n, int kb, int32_t* out_labels) {
  WOCCE_CHECK_ARG(labels && out_labels && members > 0 && n > 0);
  return guarded([&] {
    std::vector<wocce::Partition> crowd;
    crowd.reserve(members);
    for (std::size_t m = 0; m < members; ++m)
      crowd.push_back(wocce::make_partition(to_labels(labels + m * n, n), wocce::AlgorithmDescriptor::consensus(),
                                            wocce::Matrix(), 0));
    copy_labels(wocce::wocce_consensus(crowd, n, kb).labels, out_labels);
  });
}

wocce_status wocce_build_crowd(const wocce_dataset* ds, const char* roster, double it, double dt, int ct, int kb,
                               int budget, uint64_t seed, wocce_crowd** out) {
  WOCCE_CHECK_ARG(ds && out);
  return guarded([&] {
    auto list = (roster && *roster) ? wocce::parse_roster(roster) : wocce::default_roster();
    wocce::ThresholdConfig th;
    th.it = it;
    th.dt = dt;
    th.ct = ct;
    th.kb = kb;
    th.candidate_budget = budget > 0 ? budget : static_cast<int>(10 * list.size());
    auto handle = std::make_unique<wocce_crowd>();
    handle->crowd = wocce::build_crowd(ds->ds, list, th, seed);
    handle->samples = ds->ds.samples();
    handle->log = wocce::admission_log_jsonl(handle->crowd.admission_log);
    *out = handle.release();
  });
}

wocce_status wocce_crowd_size(const wocce_crowd* crowd, size_t* members) {
  WOCCE_CHECK_ARG(crowd && members);
  *members = crowd->crowd.members.size();
  last_error.clear();
  return WOCCE_OK;
}

wocce_status wocce_crowd_member_labels(const wocce_crowd* crowd, size_t index, int32_t* out_labels) {
  WOCCE_CHECK_ARG(crowd && out_labels);
  if (index >= crowd->crowd.members.size()) return fail(WOCCE_ERR_SIZE, "crowd member index out of range");
  copy_labels(crowd->crowd.members[index].labels, out_labels);
  last_error.clear();
  return WOCCE_OK;
}

wocce_status wocce_crowd_consensus(const wocce_crowd* crowd, int kb, int32_t* out_labels) {
  WOCCE_CHECK_ARG(crowd && out_labels);
  return guarded([&] { copy_labels(wocce::wocce_consensus(crowd->crowd, crowd->samples, kb).labels, out_labels); });
}

const char* wocce_crowd_admission_log(const wocce_crowd* crowd) { return crowd ? crowd->log.c_str() : ""; }

void wocce_crowd_free(wocce_crowd* crowd) { delete crowd; }

wocce_status wocce_config_create(wocce_config** out) {
  WOCCE_CHECK_ARG(out);
  return guarded([&] { *out = new wocce_config{}; });
}

wocce_status wocce_config_set(wocce_config* cfg, const char* key, const char* value) {
  WOCCE_CHECK_ARG(cfg && key && value);
  return guarded([&] { wocce::apply_setting(cfg->cfg, key, value); });
}

wocce_status wocce_config_load_file(wocce_config* cfg, const char* path) {
  WOCCE_CHECK_ARG(cfg && path);
  return guarded([&] { wocce::load_config_file(cfg->cfg, path); });
}

void wocce_config_free(wocce_config* cfg) { delete cfg; }

wocce_status wocce_run_experiment(const wocce_config* cfg, wocce_report** out) {
  WOCCE_CHECK_ARG(cfg && out);
  return guarded([&] {
    auto handle = std::make_unique<wocce_report>();
    handle->cfg = cfg->cfg;
    handle->points.push_back(wocce::run_experiment(cfg->cfg));
    handle->json = wocce::report_json(handle->points, handle->cfg);
    *out = handle.release();
  });
}

wocce_status wocce_run_sweep(const wocce_config* cfg, wocce_report** out) {
  WOCCE_CHECK_ARG(cfg && out);
  return guarded([&] {
    auto handle = std::make_unique<wocce_report>();
    handle->cfg = cfg->cfg;
    handle->points = wocce::run_sweep(cfg->cfg);
    handle->json = wocce::report_json(handle->points, handle->cfg);
    *out = handle.release();
  });
}

wocce_status wocce_report_points(const wocce_report* report, size_t* points) {
  WOCCE_CHECK_ARG(report && points);
  *points = report->points.size();
  last_error.clear();
  return WOCCE_OK;
}

wocce_status wocce_report_method_mean(const wocce_report* report, size_t point, const char* method, double* accuracy,
                                      double* nmi, double* crowd_size) {
  WOCCE_CHECK_ARG(report && method);
  if (point >= report->points.size()) return fail(WOCCE_ERR_SIZE, "report point index out of range");
  return guarded([&] {
    const auto& m = report->points[point].method(method);
    if (accuracy) *accuracy = m.mean_accuracy;
    if (nmi) *nmi = m.mean_nmi;
    if (crowd_size) *crowd_size = m.mean_crowd_size;
  });
}

wocce_status wocce_report_failed_runs(const wocce_report* report, size_t* failed) {
  WOCCE_CHECK_ARG(report && failed);
  std::size_t total = 0;
  for (const auto& p : report->points) total += static_cast<std::size_t>(p.failed_runs());
  *failed = total;
  last_error.clear();
  return WOCCE_OK;
}

const char* wocce_report_json(const wocce_report* report) { return report ? report->json.c_str() : ""; }

wocce_status wocce_report_write(const wocce_report* report, const char* path) {
  WOCCE_CHECK_ARG(report);
  return guarded([&] {
    wocce::ExperimentConfig cfg = report->cfg;
    if (path) cfg.output = path;
    wocce::write_outputs(report->points, cfg);
  });
}

void wocce_report_free(wocce_report* report) { delete report; }

}  // extern "C"
