/*
 * C interface to the wocce cluster-ensemble library.
 *
 * Every function returns a wocce_status; on failure a human-readable message
 * is available from wocce_last_error() on the calling thread until the next
 * call into the library. Handles are opaque and owned by the caller, who
 * releases them with the matching *_free function. Label arrays are int32
 * values 0..k-1, one per sample.
 */
#ifndef WOCCE_H
#define WOCCE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(WOCCE_BUILDING_LIBRARY)
#define WOCCE_API __declspec(dllexport)
#else
#define WOCCE_API __declspec(dllimport)
#endif
#else
#define WOCCE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wocce_status {
  WOCCE_OK = 0,
  WOCCE_ERR_PARSE = 1,
  WOCCE_ERR_SIZE = 2,
  WOCCE_ERR_CONFIG = 3,
  WOCCE_ERR_DOMAIN = 4,
  WOCCE_ERR_DEGENERATE_FIT = 5,
  WOCCE_ERR_NO_WISE_CROWD = 6,
  WOCCE_ERR_INTERNAL = 7,
  WOCCE_ERR_IO = 8,
  WOCCE_ERR_INVALID_ARGUMENT = 20,
  WOCCE_ERR_UNKNOWN = 99
} wocce_status;

typedef struct wocce_dataset wocce_dataset;
typedef struct wocce_crowd wocce_crowd;
typedef struct wocce_config wocce_config;
typedef struct wocce_report wocce_report;

WOCCE_API const char* wocce_version(void);
WOCCE_API const char* wocce_last_error(void);
WOCCE_API const char* wocce_status_name(wocce_status status);

/* Datasets */
WOCCE_API wocce_status wocce_dataset_load_csv(const char* path, int has_labels, wocce_dataset** out);
WOCCE_API wocce_status wocce_dataset_half_ring(size_t n, double noise, uint64_t seed, wocce_dataset** out);
WOCCE_API wocce_status wocce_dataset_normalize(wocce_dataset* ds);
/* k_true is 0 when the dataset carries no labels. Any out pointer may be NULL. */
WOCCE_API wocce_status wocce_dataset_shape(const wocce_dataset* ds, size_t* n, size_t* d, int* k_true);
WOCCE_API wocce_status wocce_dataset_write_csv(const wocce_dataset* ds, const char* path);
WOCCE_API void wocce_dataset_free(wocce_dataset* ds);

/* Evaluation */
WOCCE_API wocce_status wocce_accuracy(const int32_t* pred, const int32_t* truth, size_t n, double* out_percent);
WOCCE_API wocce_status wocce_nmi(const int32_t* a, const int32_t* b, size_t n, double* out);

/* Consensus over raw labelings: `labels` holds `members` rows of n labels. */
WOCCE_API wocce_status wocce_consensus_labels(const int32_t* labels, size_t members, size_t n, int kb,
                                              int32_t* out_labels);

/* Crowd construction. `roster` is a comma-separated descriptor list such as
 * "kmeans,fcm,hier:ward:euclidean"; NULL or "" selects the default roster.
 * budget <= 0 selects ten attempts per roster entry. */
WOCCE_API wocce_status wocce_build_crowd(const wocce_dataset* ds, const char* roster, double it, double dt, int ct,
                                         int kb, int budget, uint64_t seed, wocce_crowd** out);
WOCCE_API wocce_status wocce_crowd_size(const wocce_crowd* crowd, size_t* members);
WOCCE_API wocce_status wocce_crowd_member_labels(const wocce_crowd* crowd, size_t index, int32_t* out_labels);
WOCCE_API wocce_status wocce_crowd_consensus(const wocce_crowd* crowd, int kb, int32_t* out_labels);
/* JSON lines, one admission record per candidate; owned by the crowd. */
WOCCE_API const char* wocce_crowd_admission_log(const wocce_crowd* crowd);
WOCCE_API void wocce_crowd_free(wocce_crowd* crowd);

/* Experiments. Keys match the CLI flags (dataset, kb, it, dt, ct, runs, seed,
 * roster, baselines, out, vary, grid, normalize, labels, budget, target,
 * exact_k). */
WOCCE_API wocce_status wocce_config_create(wocce_config** out);
WOCCE_API wocce_status wocce_config_set(wocce_config* cfg, const char* key, const char* value);
WOCCE_API wocce_status wocce_config_load_file(wocce_config* cfg, const char* path);
WOCCE_API void wocce_config_free(wocce_config* cfg);

WOCCE_API wocce_status wocce_run_experiment(const wocce_config* cfg, wocce_report** out);
WOCCE_API wocce_status wocce_run_sweep(const wocce_config* cfg, wocce_report** out);
/* Number of grid points (1 for a plain run). */
WOCCE_API wocce_status wocce_report_points(const wocce_report* report, size_t* points);
WOCCE_API wocce_status wocce_report_method_mean(const wocce_report* report, size_t point, const char* method,
                                                double* accuracy, double* nmi, double* crowd_size);
WOCCE_API wocce_status wocce_report_failed_runs(const wocce_report* report, size_t* failed);
/* Full JSON report; owned by the report handle. */
WOCCE_API const char* wocce_report_json(const wocce_report* report);
/* Writes the JSON report plus summary.csv or sweep.csv and admission.jsonl
 * next to it. NULL uses the configured output path. */
WOCCE_API wocce_status wocce_report_write(const wocce_report* report, const char* path);
WOCCE_API void wocce_report_free(wocce_report* report);

#ifdef __cplusplus
}
#endif

#endif /* WOCCE_H */
