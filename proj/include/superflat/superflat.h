/* superflat: exact verification of the joint KZ/dynamical flat system for
 * gl(n|m) tensor representations, plus floating-point flow experiments.
 *
 * All functions are thread-compatible: distinct handles may be used from
 * distinct threads; a single handle must not be shared without locking.
 * Failure details for the last failing call on this thread are available
 * via sf_last_error().
 */
#ifndef SUPERFLAT_H
#define SUPERFLAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SF_API __declspec(dllexport)
#else
#define SF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status {
    SF_OK = 0,
    SF_ERROR_INVALID_ARGUMENT = 1,
    SF_ERROR_CONFIG = 2,
    SF_ERROR_POLE = 3,
    SF_ERROR_NUMERICAL = 4,
    SF_ERROR_IO = 5,
    SF_ERROR_INTERNAL = 6
} sf_status;

SF_API const char* sf_version(void);
SF_API const char* sf_status_name(sf_status status);
/* message of the last failing call on this thread; empty string when none */
SF_API const char* sf_last_error(void);

/* ---- verification suite ---- */

typedef struct sf_verify_config sf_verify_config;

SF_API sf_verify_config* sf_verify_config_new(void);
SF_API void sf_verify_config_free(sf_verify_config* config);

/* load a key = value config file; explicit setters below override it */
SF_API sf_status sf_verify_config_load_file(sf_verify_config* config, const char* path);
SF_API sf_status sf_verify_config_add_case(sf_verify_config* config, int n, int m, int k);
SF_API sf_status sf_verify_config_clear_cases(sf_verify_config* config);
SF_API sf_status sf_verify_config_set_trials(sf_verify_config* config, int trials);
SF_API sf_status sf_verify_config_set_seed(sf_verify_config* config, uint64_t seed);
/* kappa as exact rational text, "2" or "1/3"; clearing restores the default set */
SF_API sf_status sf_verify_config_add_kappa(sf_verify_config* config, const char* kappa);
SF_API sf_status sf_verify_config_clear_kappas(sf_verify_config* config);
/* restrict to named checks; empty selection runs everything */
SF_API sf_status sf_verify_config_add_check(sf_verify_config* config, const char* name);
/* "none", "drop_pole_parity_sign", "drop_cartan_term", "drop_embed_signs" */
SF_API sf_status sf_verify_config_set_mutation(sf_verify_config* config, const char* name);
/* output path from a loaded config file, empty when unset; owned by config */
SF_API const char* sf_verify_config_output_path(const sf_verify_config* config);

/* ---- reports ---- */

typedef struct sf_report sf_report;

SF_API void sf_report_free(sf_report* report);
/* 1 when no check failed (skipped checks do not fail a report) */
SF_API int sf_report_passed(const sf_report* report);
/* JSON document; pointer owned by the report */
SF_API const char* sf_report_json(const sf_report* report);
SF_API sf_status sf_report_write(const sf_report* report, const char* path);
SF_API size_t sf_report_check_count(const sf_report* report);
/* "[status] name key=value ... residual=..." or NULL when out of range */
SF_API const char* sf_report_check_line(const sf_report* report, size_t index);

/* runs the suite; *out_report owns the results on SF_OK */
SF_API sf_status sf_run_verify(const sf_verify_config* config, sf_report** out_report);

/* ---- focused Matsuo-Cherednik checks (k forced to n+m) ---- */

typedef struct sf_mc_params {
    int n;
    int m;
    int sector;          /* 0 or 1 */
    int trials;
    uint64_t seed;
    const char* kappa;   /* rational text; NULL selects "2" */
    const char* mutation; /* NULL or mutation name */
} sf_mc_params;

SF_API sf_status sf_run_mc(const sf_mc_params* params, sf_report** out_report);

/* ---- floating-point flow experiments ---- */

typedef struct sf_flow_params {
    int n;
    int m;
    int k;
    const char* mode;            /* "loop", "path", or "fdmc" */
    const char* kappa;           /* rational text; NULL selects "2" */
    double step;                 /* RK4 step length, must be positive */
    double h;                    /* fdmc stencil offset; ignored otherwise */
    uint64_t seed;
    const char* mutation;        /* NULL or mutation name */
    const char* trajectory_path; /* optional CSV dump (loop mode) */
} sf_flow_params;

SF_API sf_status sf_run_flow(const sf_flow_params* params, sf_report** out_report);

#ifdef __cplusplus
}
#endif

#endif /* SUPERFLAT_H */
