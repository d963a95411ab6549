#ifndef HYPSTRIP_H
#define HYPSTRIP_H

/* C interface to the hypstrip library. Every call returns an hs_status;
 * on failure hs_last_error() describes the most recent error on the calling
 * thread. Handles are opaque and owned by the caller. */

#include <stddef.h>
#include <stdint.h>

#if defined(HS_BUILDING_LIBRARY)
#define HS_API __attribute__((visibility("default")))
#else
#define HS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hs_status {
  HS_OK = 0,
  HS_INVALID_ARGUMENT,
  HS_NOT_HYPERBOLIC,
  HS_NOT_HYPERPARALLEL,
  HS_NOT_PERPENDICULAR,
  HS_NON_POSITIVE_WIDTH,
  HS_NON_POSITIVE_LENGTH,
  HS_BOUNDARY_NOT_HYPERBOLIC,
  HS_NOT_DISCRETE,
  HS_UNKNOWN_GENERATOR,
  HS_UNSUPPORTED_TOPOLOGY,
  HS_BASEPOINT_IN_WALL,
  HS_TANGENT_WALL,
  HS_STRIP_NOT_EMBEDDED,
  HS_NON_CONVERGED_WALLS,
  HS_TOPOLOGY_MISMATCH,
  HS_EMPTY_CLASS_SET,
  HS_CONFIG_ERROR,
  HS_IO_ERROR,
  HS_INTERNAL_ERROR
} hs_status;

typedef struct hs_surface hs_surface;
typedef struct hs_config hs_config;

HS_API const char* hs_status_name(hs_status status);
HS_API const char* hs_last_error(void);
HS_API const char* hs_version(void);

/* Surfaces. */
HS_API hs_status hs_pants_create(double l1, double l2, double l3, hs_surface** out);
HS_API hs_status hs_torus_create(double x, double y, double z, hs_surface** out);
HS_API void hs_surface_free(hs_surface* s);
HS_API hs_status hs_surface_label(const hs_surface* s, const char** label);
/* word uses a, b for generators and A, B for inverses. */
HS_API hs_status hs_curve_length(const hs_surface* s, const char* word, double* length);
/* Arc names: "12", "13", "23", "11", "22", "33" on pants, "p/q" on the torus. */
HS_API hs_status hs_arc_length(const hs_surface* s, const char* arc, double* length);
HS_API hs_status hs_peel(const hs_surface* s, const char* const* arcs, size_t n_arcs, double eps, int wall_radius,
                         hs_surface** out);
/* kind is 'k', 'K' or 'd'. */
HS_API hs_status hs_weak_metric(const hs_surface* x, const hs_surface* y, char kind, int bound, double* value);

/* Harness. */
HS_API hs_status hs_config_load(const char* path, hs_config** out);
HS_API hs_status hs_config_parse(const char* json, hs_config** out);
HS_API void hs_config_free(hs_config* c);
HS_API hs_status hs_config_set_out(hs_config* c, const char* dir);
HS_API hs_status hs_config_set_seed(hs_config* c, uint64_t seed);
HS_API hs_status hs_config_set_bound(hs_config* c, int bound);
HS_API hs_status hs_config_set_eps(hs_config* c, double eps);
/* Runs build, spectrum, peel, metric or verify. exit_code receives 0 on
 * success, 1 on an input or domain error, 2 on a verification failure. */
HS_API hs_status hs_run(const char* command, const hs_config* c, int* exit_code);
/* Summary text of the last hs_run on this thread. */
HS_API const char* hs_last_report(void);

#ifdef __cplusplus
}
#endif

#endif
