/* rwlab C interface. Every function returns a status code; on failure the
 * thread-local rwlab_last_error() describes what went wrong. Handles are
 * opaque and owned by the caller, who releases them with the matching
 * *_destroy function (NULL is accepted). */
#ifndef RWLAB_H
#define RWLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(RWLAB_BUILDING_LIBRARY)
#define RWLAB_API __attribute__((visibility("default")))
#else
#define RWLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rwlab_status {
  RWLAB_OK = 0,
  RWLAB_INVALID_ARGUMENT = 1,
  RWLAB_EMPTY_WINDOW = 2,
  RWLAB_DEGENERATE_WINDOW = 3,
  RWLAB_RESOURCE_LIMIT = 4,
  RWLAB_NUMERIC_FAILURE = 5,
  RWLAB_CONFIG = 6,
  RWLAB_IO = 7,
  RWLAB_INTERNAL = 8
} rwlab_status;

typedef struct rwlab_manifold rwlab_manifold;
typedef struct rwlab_window rwlab_window;
typedef struct rwlab_config rwlab_config;

/* Moments of the ball mass F = int_B |u|^2 for u uniform on the unit sphere
 * of the window. */
typedef struct rwlab_moments {
  double expectation;
  double variance_exact;
  double variance_paper; /* 2 |M|_F^2 / N^2 */
  double lambda_max;     /* largest Gram eigenvalue */
  double target;         /* Vol(B) / Vol(M) */
  size_t n_modes;
} rwlab_moments;

RWLAB_API const char* rwlab_version(void);
RWLAB_API const char* rwlab_last_error(void);
RWLAB_API const char* rwlab_status_name(rwlab_status status);

/* name: "torus2" or "sphere2". */
RWLAB_API rwlab_status rwlab_manifold_create(const char* name, rwlab_manifold** out);
RWLAB_API void rwlab_manifold_destroy(rwlab_manifold* m);
RWLAB_API rwlab_status rwlab_manifold_volume(const rwlab_manifold* m, double* out);
/* Number of eigenfrequencies (with multiplicity) in [lo, hi]. */
RWLAB_API rwlab_status rwlab_count_modes(const rwlab_manifold* m, double lo, double hi, size_t* out);
RWLAB_API rwlab_status rwlab_weyl_remainder(const rwlab_manifold* m, double lambda, double* out);

/* Window [lambda - width, lambda]. */
RWLAB_API rwlab_status rwlab_window_create(const rwlab_manifold* m, double lambda, double width,
                                           rwlab_window** out);
RWLAB_API void rwlab_window_destroy(rwlab_window* w);
RWLAB_API rwlab_status rwlab_window_dimension(const rwlab_window* w, size_t* out);
/* Points are (x1, x2) on the torus and (theta, phi) on the sphere. */
RWLAB_API rwlab_status rwlab_projector_kernel(const rwlab_window* w, double x1, double x2, double y1,
                                              double y2, double* out);
/* order 0 selects the quadrature order automatically. */
RWLAB_API rwlab_status rwlab_ball_moments(const rwlab_window* w, double c1, double c2, double radius,
                                          int order, rwlab_moments* out);
/* count ball masses of independent random waves, sample i seeded from (seed, i). */
RWLAB_API rwlab_status rwlab_sample_ball_mass(const rwlab_window* w, double c1, double c2, double radius,
                                              int order, uint64_t seed, size_t count, double* out);

/* experiment: weyl, expectation, variance, tail, uniform, sweep,
 * kernel-profile or sogge. */
RWLAB_API rwlab_status rwlab_config_parse(const char* experiment, const char* text, rwlab_config** out);
RWLAB_API rwlab_status rwlab_config_load(const char* experiment, const char* path, rwlab_config** out);
RWLAB_API void rwlab_config_destroy(rwlab_config* c);
RWLAB_API rwlab_status rwlab_config_set_seed(rwlab_config* c, uint64_t seed);
RWLAB_API rwlab_status rwlab_config_set_threads(rwlab_config* c, unsigned threads);
RWLAB_API rwlab_status rwlab_config_set_out_dir(rwlab_config* c, const char* dir);
RWLAB_API rwlab_status rwlab_config_set_plot(rwlab_config* c, int enabled);

/* Runs the experiment and writes its CSV/JSON (and SVG) outputs. */
RWLAB_API rwlab_status rwlab_run(const rwlab_config* c);

#ifdef __cplusplus
}
#endif

#endif
