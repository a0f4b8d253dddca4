#ifndef SCHURLOC_H
#define SCHURLOC_H

/* C interface to the schurloc library. All handles are opaque; every
 * fallible call returns an sl_status and, on failure, leaves a message for
 * sl_last_error_message() on the calling thread. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SL_API __declspec(dllexport)
#else
#define SL_API __attribute__((visibility("default")))
#endif

typedef enum sl_status {
  SL_OK = 0,
  SL_ERR_PARSE = 1,
  SL_ERR_CONFIG = 2,
  SL_ERR_NO_CONVERGENCE = 3,
  SL_ERR_HERMITIAN = 4,
  SL_ERR_SINGULAR = 5,
  SL_ERR_INVALID_ARGUMENT = 6,
  SL_ERR_IO = 7,
  SL_ERR_INTERNAL = 8
} sl_status;

typedef enum sl_family {
  SL_GERSHGORIN = 0,
  SL_CASSINI = 1,
  SL_SCHUR = 2,
  SL_MODIFIED_SCHUR = 3
} sl_family;

typedef enum sl_norm { SL_NORM_ONE = 0, SL_NORM_INF = 1 } sl_norm;

typedef struct sl_matrix sl_matrix;
typedef struct sl_result sl_result;

typedef struct sl_options {
  /* Bit i set selects sl_family i; 0 selects all four. */
  unsigned methods;
  sl_norm norm;
  /* Nonzero selects the explicit window below instead of the automatic one. */
  int explicit_window;
  double re_min, re_max, im_min, im_max;
  size_t resolution;
  double tol;
  size_t samples;
} sl_options;

SL_API void sl_options_default(sl_options* opts);

/* Matrices. `data` is row-major interleaved (re, im) of length 2*n*n;
 * `partition` may be NULL for all-ones. */
SL_API sl_status sl_matrix_parse(const char* json, size_t len, sl_matrix** out);
SL_API sl_status sl_matrix_load(const char* path, sl_matrix** out);
SL_API sl_status sl_matrix_create(size_t n, const double* data, const size_t* partition,
                                  size_t num_blocks, sl_matrix** out);
SL_API void sl_matrix_destroy(sl_matrix* m);
SL_API size_t sl_matrix_dim(const sl_matrix* m);
SL_API size_t sl_matrix_blocks(const sl_matrix* m);
/* 1 when a_ij = conj(a_ji) to within 1e-10 * max(1, max |a_ij|). */
SL_API int sl_matrix_is_hermitian(const sl_matrix* m);

/* Writes dim pairs (re, im), sorted by real then imaginary part. */
SL_API sl_status sl_eigenvalues(const sl_matrix* m, double* out, size_t out_len);
SL_API sl_status sl_locus_contains(const sl_matrix* m, sl_family f, sl_norm norm, double re,
                                   double im, int* member);

SL_API sl_status sl_locate(const sl_matrix* m, const sl_options* opts, sl_result** out);
SL_API sl_status sl_verify(const sl_matrix* m, const sl_options* opts, sl_result** out);
SL_API sl_status sl_intervals(const sl_matrix* m, const sl_options* opts, sl_result** out);

/* Returned strings are owned by the result and live until it is destroyed. */
SL_API const char* sl_result_json(const sl_result* r);
/* 1 when every eigenvalue lies in every requested locus (verify only). */
SL_API int sl_result_all_member(const sl_result* r);
/* Empty unless produced by sl_locate. */
SL_API const char* sl_result_svg(const sl_result* r);
SL_API size_t sl_result_mask_count(const sl_result* r);
SL_API const char* sl_result_mask_method(const sl_result* r, size_t i);
SL_API const unsigned char* sl_result_mask_pbm(const sl_result* r, size_t i, size_t* len);
SL_API const char* sl_result_mask_sidecar(const sl_result* r, size_t i);
SL_API void sl_result_destroy(sl_result* r);

SL_API const char* sl_last_error_message(void);
/* Stable machine-readable name, e.g. "ParseError". */
SL_API const char* sl_status_string(sl_status s);

#ifdef __cplusplus
}
#endif

#endif
