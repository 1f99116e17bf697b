#ifndef PAULI_TOMOGRAPH_H
#define PAULI_TOMOGRAPH_H

#include <stddef.h>

#if defined(PT_BUILDING_LIBRARY)
#define PT_API __attribute__((visibility("default")))
#else
#define PT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pt_status {
  PT_OK = 0,
  PT_ERR_CONTRACT = 1,
  PT_ERR_DOMAIN = 2,
  PT_ERR_CAPABILITY = 3,
  PT_ERR_ILL_POSED = 4,
  PT_ERR_RECONSTRUCTION = 5,
  PT_ERR_CONFIG = 6,
  PT_ERR_IO = 7,
  PT_ERR_INTERNAL = 8
} pt_status;

typedef struct pt_axis {
  double min;
  double max;
  size_t count;
} pt_axis;

/* Spin-1/2 state (pure or weighted ensemble) on a 1D or 2D grid. */
typedef struct pt_state pt_state;
/* Optical or symplectic tomogram, Wigner or Husimi function. */
typedef struct pt_dist pt_dist;

typedef struct pt_evolution {
  const char* flow; /* "free", "oscillator" or "landau" */
  double omega;     /* Landau cyclotron frequency, sign is the charge sign */
  double omega0;    /* spin frequency for a field along q3 */
  int use_field;    /* nonzero: spin generator from field and kappa, omega0 ignored */
  double field[3];
  double kappa;
  double t;
} pt_evolution;

PT_API const char* pt_version(void);
/* Message of the last failed call on this thread, empty if none. */
PT_API const char* pt_last_error(void);
PT_API void pt_set_threads(int n);
PT_API void pt_string_free(char* s);

/* spin_down = 0 puts the spatial factor in the s3 = +1/2 component. */
PT_API pt_status pt_state_fock(int n, pt_axis axis, int spin_down, pt_state** out);
PT_API pt_status pt_state_coherent(double re, double im, pt_axis axis, int spin_down, pt_state** out);
/* Square 2D grid built from `axis` on both coordinates. */
PT_API pt_status pt_state_landau(int n, int m, pt_axis axis, int spin_down, pt_state** out);
/* "oscillator" or "landau" entangled initial state; axis may be NULL for the defaults. */
PT_API pt_status pt_state_scenario(const char* id, const pt_axis* axis, pt_state** out);
PT_API pt_status pt_state_evolve(const pt_state* s, const pt_evolution* e, pt_state** out);
/* JSON: dims, trace, spatially integrated spin probability vector. */
PT_API pt_status pt_state_report(const pt_state* s, char** json);
PT_API pt_status pt_state_save(const pt_state* s, const char* path, const char* meta_json);
PT_API pt_status pt_state_export_csv(const pt_state* s, const char* path);
PT_API void pt_state_free(pt_state* s);

/* rep is "optical", "symplectic", "wigner" or "husimi".
   optical: params holds n_samples angle tuples (one angle per axis); NULL selects 64 uniform angles (1D).
   symplectic: params holds n_samples (mu, nu) pairs. Ignored for the phase-space representations. */
PT_API pt_status pt_transform(const pt_state* s, const char* rep, const double* params, size_t n_samples,
                              pt_dist** out);
PT_API pt_status pt_dist_transform(const pt_dist* d, const char* rep, const double* params, size_t n_samples,
                                   pt_dist** out);
PT_API pt_status pt_dist_reconstruct(const pt_dist* d, pt_state** out);
PT_API pt_status pt_dist_evolve(const pt_dist* d, const pt_evolution* e, pt_dist** out);
/* JSON: representation, component integrals, normalization deviation, minimum value. */
PT_API pt_status pt_dist_report(const pt_dist* d, char** json);
PT_API const char* pt_dist_representation(const pt_dist* d);
PT_API pt_status pt_dist_save(const pt_dist* d, const char* path, const char* meta_json);
PT_API pt_status pt_dist_export_csv(const pt_dist* d, const char* path);
PT_API void pt_dist_free(pt_dist* d);

/* Loads a TJSON file; exactly one of *state and *dist is set on success. */
PT_API pt_status pt_load(const char* path, pt_state** state, pt_dist** dist);

/* Runs a scenario check. tol <= 0 selects the scenario default. The report is JSON. */
PT_API pt_status pt_verify(const char* scenario, const double* times, size_t n_times, double tol, char** report,
                           int* passed);

#ifdef __cplusplus
}
#endif

#endif
