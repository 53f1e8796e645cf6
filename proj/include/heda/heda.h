/* C interface to the HEDA simulator. All handles are opaque; every call that can
 * fail returns a heda_status and leaves a message readable through heda_last_error()
 * on the calling thread. */
#ifndef HEDA_H
#define HEDA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HEDA_API __declspec(dllexport)
#else
#define HEDA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum heda_status {
    HEDA_OK = 0,
    HEDA_ERR_PARSE = 1,      /* malformed document, unknown key */
    HEDA_ERR_CONSTRAINT = 2, /* value violates a model or config constraint */
    HEDA_ERR_IO = 3,
    HEDA_ERR_ARGUMENT = 4,   /* null handle or pointer */
    HEDA_ERR_INTERNAL = 5
} heda_status;

typedef struct heda_config heda_config;
typedef struct heda_result heda_result;

typedef enum heda_routing { HEDA_ROUTING_SELECTIVE = 0, HEDA_ROUTING_RANDOM = 1 } heda_routing;

/* Message of the last failed call on this thread, "" if none. Valid until the next call. */
HEDA_API const char* heda_last_error(void);

HEDA_API const char* heda_version(void);

/* Configuration. An empty document yields the defaults. */
HEDA_API heda_status heda_config_default(heda_config** out);
HEDA_API heda_status heda_config_from_json(const char* document, heda_config** out);
HEDA_API heda_status heda_config_from_file(const char* path, heda_config** out);
/* Caller frees *out with heda_string_free. */
HEDA_API heda_status heda_config_to_json(const heda_config* config, char** out);
HEDA_API void heda_config_free(heda_config* config);
HEDA_API void heda_string_free(char* s);

/* The seed a run uses when the caller has none of its own. */
HEDA_API heda_status heda_config_get_seed(const heda_config* config, uint64_t* out);
HEDA_API heda_status heda_config_set_radii(heda_config* config, double r_sense, double r_tx);
HEDA_API heda_status heda_config_set_routing(heda_config* config, heda_routing routing);
HEDA_API heda_status heda_config_set_horizon(heda_config* config, double horizon_s);

typedef struct heda_summary {
    uint64_t seed;
    double r_sense;
    double r_tx;
    heda_routing routing;
    double final_total_residual_incl;
    double final_total_residual_excl;
    double disconnect_time_s; /* +inf when never */
    double partition_time_s;  /* +inf when never */
    uint64_t generated;
    uint64_t delivered;
    uint64_t dropped;
    uint64_t lost;
    uint64_t in_flight;
    uint64_t ledger_entries;
    uint32_t active_nodes;
    uint32_t deactivations;
} heda_summary;

/* Runs one simulation. Caller frees *out with heda_result_free. */
HEDA_API heda_status heda_run(const heda_config* config, uint64_t seed, heda_result** out);
HEDA_API void heda_result_free(heda_result* result);
HEDA_API heda_status heda_result_summary(const heda_result* result, heda_summary* out);
/* Writes residual_energy.csv, summary.csv, events.log, constraints.csv, timeseries.csv
 * and deactivations.csv into dir. */
HEDA_API heda_status heda_result_write(const heda_result* result, const char* dir);
/* Final residual of each node; `count` must equal the node count. */
HEDA_API heda_status heda_result_residuals(const heda_result* result, double* out, size_t count);

typedef struct heda_verify_report {
    int ok;
    uint64_t entries;
    uint32_t worst_node; /* UINT32_MAX when no mismatch */
    double worst_relative;
    double worst_delta;
} heda_verify_report;

/* Replays events_path under config_path; residuals_path may be NULL. A mismatch is
 * HEDA_OK with report->ok == 0 and a description in heda_last_error(). */
HEDA_API heda_status heda_verify(const char* events_path, const char* config_path, const char* residuals_path,
                                 heda_verify_report* report);
/* Replays an in-memory run through its text export. */
HEDA_API heda_status heda_result_verify(const heda_result* result, heda_verify_report* report);

typedef struct heda_sweep_report {
    uint64_t cells;
    uint64_t failures;
    uint64_t verify_failures;
} heda_sweep_report;

/* Runs a sweep spec file on up to `jobs` threads and writes its CSVs into out_dir. */
HEDA_API heda_status heda_sweep(const char* spec_path, const char* out_dir, unsigned jobs, heda_sweep_report* report);

/* Geometry of the deployment a config and seed produce. */
HEDA_API heda_status heda_max_neighbor_count(const heda_config* config, uint64_t seed, double r_tx, uint32_t* out);
HEDA_API heda_status heda_min_connectivity_radius(const heda_config* config, uint64_t seed, double* out);

#ifdef __cplusplus
}
#endif

#endif
