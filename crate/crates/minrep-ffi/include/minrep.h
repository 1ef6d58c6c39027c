#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum MinrepStatus {
  MINREP_STATUS_OK = 0,
  MINREP_STATUS_NULL_POINTER = 1,
  MINREP_STATUS_INVALID_ARGUMENT = 2,
  MINREP_STATUS_DOMAIN_ERROR = 3,
  MINREP_STATUS_NUMERICAL_ERROR = 4,
  /**
   * The element lies in the parabolic subgroup; the generic
   * factorization does not apply.
   */
  MINREP_STATUS_IN_PARABOLIC = 5,
} MinrepStatus;

/**
 * Opaque evaluation context.
 */
typedef struct MinrepModel MinrepModel;

/**
 * The most recent error message on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *minrep_last_error_message(void);

/**
 * Creates a model for dimension m >= 2. NULL on invalid input.
 */
struct MinrepModel *minrep_model_new(uintptr_t m);

/**
 * Frees a model handle. NULL is accepted.
 *
 * # Safety
 * `model` must be a pointer from `minrep_model_new` not yet freed.
 */
void minrep_model_free(struct MinrepModel *model);

/**
 * Radial kernel K_l(r, r'; t).
 *
 * # Safety
 * `model` must be valid; `out_re`, `out_im` must point to writable f64.
 */
enum MinrepStatus minrep_radial_kernel(const struct MinrepModel *model,
                                       uintptr_t l,
                                       double r,
                                       double rp,
                                       double t_re,
                                       double t_im,
                                       double *out_re,
                                       double *out_im);

/**
 * Full kernel K(x, x'; t); `x` and `xp` each hold m coordinates.
 *
 * # Safety
 * `x`, `xp` must point to m readable f64 each; out pointers writable.
 */
enum MinrepStatus minrep_full_kernel(const struct MinrepModel *model,
                                     const double *x,
                                     const double *xp,
                                     double t_re,
                                     double t_im,
                                     double *out_re,
                                     double *out_im);

/**
 * Boundary-value (inversion) kernel K(x, x').
 *
 * # Safety
 * As for `minrep_full_kernel`.
 */
enum MinrepStatus minrep_inversion_kernel(const struct MinrepModel *model,
                                          const double *x,
                                          const double *xp,
                                          double *out_re,
                                          double *out_im);

/**
 * Value of the eigenprofile f_{a,l} at r.
 *
 * # Safety
 * `out` must point to a writable f64.
 */
enum MinrepStatus minrep_eigenprofile_eval(const struct MinrepModel *model,
                                           uintptr_t a,
                                           uintptr_t l,
                                           double r,
                                           double *out);

/**
 * Applies the semigroup at time t to the eigenprofile f_{a,l} on a
 * caller grid of n points, writing n complex values.
 *
 * # Safety
 * `grid` must hold n readable f64; `out_re`, `out_im` n writable f64.
 */
enum MinrepStatus minrep_semigroup_apply(const struct MinrepModel *model,
                                         uintptr_t a,
                                         uintptr_t l,
                                         double t_re,
                                         double t_im,
                                         uintptr_t quad_n,
                                         const double *grid,
                                         uintptr_t n,
                                         double *out_re,
                                         double *out_im);

/**
 * Factors a group element given as an (m+3)^2 row-major matrix. Writes
 * the translation parameters (m+1 each), the dilation parameter, the
 * sign, the stabilizer block ((m+3)^2, row major) and the reconstruction
 * error. Parabolic elements return `InParabolic` and write nothing.
 *
 * # Safety
 * All pointers must reference buffers of the stated sizes.
 */
enum MinrepStatus minrep_bruhat_factor(const struct MinrepModel *model,
                                       const double *entries,
                                       double *out_b,
                                       double *out_t,
                                       double *out_delta,
                                       double *out_m_plus,
                                       double *out_a,
                                       double *out_reconstruction_error);

/**
 * Runs a named verification suite ("all" included); writes the case and
 * failure counts. Status Ok means the suite ran, not that it passed.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; count pointers writable.
 */
enum MinrepStatus minrep_verify_suite(const char *suite,
                                      uintptr_t *out_cases,
                                      uintptr_t *out_failed);
