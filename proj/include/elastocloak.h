#ifndef ELASTOCLOAK_H
#define ELASTOCLOAK_H

#include <stdint.h>

#if defined(_WIN32)
#define EC_API __declspec(dllexport)
#else
#define EC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible call. Details are in ec_last_error(). */
typedef enum ec_status {
  EC_OK = 0,
  EC_ERR_DOMAIN = 1,
  EC_ERR_SINGULAR = 2,
  EC_ERR_ORIENTATION = 3,
  EC_ERR_JOINT = 4,
  EC_ERR_NEAR_RESONANCE = 5,
  EC_ERR_SEARCH_WINDOW = 6,
  EC_ERR_IO = 7,
  EC_ERR_PARSE = 8,
  EC_ERR_DEGENERATE_DATA = 9,
  EC_ERR_NULL_ARGUMENT = 20,
  EC_ERR_INTERNAL = 99
} ec_status;

typedef struct ec_config ec_config;
typedef struct ec_report ec_report;
typedef struct ec_ntd ec_ntd;

typedef struct ec_medium {
  double lambda, mu, rho_re, rho_im;
} ec_medium;

EC_API const char* ec_version(void);
/* Message of the last failed call on this thread; empty after a successful call. */
EC_API const char* ec_last_error(void);

EC_API int ec_config_from_file(const char* path, ec_config** out);
EC_API int ec_config_from_json(const char* json_text, ec_config** out);
EC_API int ec_config_set_n_max(ec_config* config, int n_max);
EC_API int ec_config_set_seed(ec_config* config, uint64_t seed);
/* 16 hex digits plus terminator. */
EC_API int ec_config_hash(const ec_config* config, char out[17]);
EC_API void ec_config_free(ec_config* config);

/* command: design | convergence | lining | resonance | kernelcheck */
EC_API int ec_run(const char* command, const ec_config* config, ec_report** out);
EC_API int ec_report_passed(const ec_report* report, int* passed);
/* Strings owned by the report; valid until ec_report_free. */
EC_API const char* ec_report_json(const ec_report* report);
EC_API const char* ec_report_csv(const ec_report* report);
/* Writes <out_dir>/<command>.csv and .json, creating out_dir if needed. */
EC_API int ec_report_write(const ec_report* report, const char* out_dir);
EC_API void ec_report_free(ec_report* report);

/* 2D fundamental solution, row-major (re, im) pairs: out[8]. omega == 0 gives the static kernel. */
EC_API int ec_green_2d(const double x[2], const double y[2], double omega, const ec_medium* medium, double out[8]);

/* NtD operator of the virtual near-cloak at radius parameter h (other parameters from config). */
EC_API int ec_ntd_near_cloak(const ec_config* config, double h, ec_ntd** out);
/* NtD operator of the uniform background disk of radius 2. */
EC_API int ec_ntd_uniform(const ec_config* config, ec_ntd** out);
/* Block of signed mode n as row-major (re, im) pairs. */
EC_API int ec_ntd_block(const ec_ntd* ntd, int n, double out[8]);
EC_API int ec_ntd_distance(const ec_ntd* a, const ec_ntd* b, double* out);
EC_API void ec_ntd_free(ec_ntd* ntd);

/* Densities (rho1 annulus, rho2 core) of a resonant two-layer inclusion. */
EC_API int ec_find_resonance(double lambda, double mu, double r0, double r1, double omega, double rho_out[2],
                      double* det_residual);

#ifdef __cplusplus
}
#endif

#endif
