/* bergman.h — C interface to the weighted-Bergman-space toolkit.
 *
 * All objects are opaque handles created by bg_*_create/parse functions and
 * released with the matching bg_*_free. Functions return BG_OK on success;
 * on failure they return an error code and leave a thread-local message
 * retrievable with bg_last_error().
 */
#ifndef BERGMAN_H
#define BERGMAN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bg_status {
  BG_OK = 0,
  BG_ERR_DOMAIN = 1,      /* argument outside the mathematical domain */
  BG_ERR_PARSE = 2,       /* bad weight / series literal */
  BG_ERR_NUMERIC = 3,     /* quadrature failure or non-convergence */
  BG_ERR_INVALID = 4,     /* null handle, size mismatch, bad flag */
  BG_ERR_UNSUPPORTED = 5  /* operation rejected (e.g. non-doubling weight) */
} bg_status;

typedef struct bg_weight bg_weight;
typedef struct bg_series bg_series;
typedef struct bg_fracd bg_fracd;

const char* bg_version(void);
const char* bg_last_error(void);

/* ---- radial weights -------------------------------------------------- */

/* Mini-language: std:alpha=<a> | log:beta=<b> | exp:c=<c> |
 * zero:[<a>,<b>]:<base>, transform suffixes +, *, ~, ^alpha=<a>. */
bg_status bg_weight_parse(const char* spec, bg_weight** out);
void bg_weight_free(bg_weight* w);
bg_status bg_weight_spec(const bg_weight* w, char* buf, size_t buflen);

bg_status bg_weight_eval(const bg_weight* w, double r, double* out);
bg_status bg_weight_tail(const bg_weight* w, double r, double* out);
bg_status bg_weight_moment(const bg_weight* w, int n, double* value,
                           double* abs_err /* nullable */);
/* values/errors must hold N+1 doubles; method_out (nullable) receives
 * 'c' (closed form) or 'q' (quadrature). */
bg_status bg_weight_moments(const bg_weight* w, int N, double* values,
                            double* errors, char* method_out);
bg_status bg_weight_total_mass(const bg_weight* w, double* out);

bg_status bg_weight_plus(const bg_weight* w, bg_weight** out);
bg_status bg_weight_star(const bg_weight* w, bg_weight** out);
bg_status bg_weight_tilde(const bg_weight* w, bg_weight** out);
bg_status bg_weight_alpha_shift(const bg_weight* w, double alpha,
                                bg_weight** out);

/* ---- power series ----------------------------------------------------- */

/* Literals: poly:[c0,c1,...] | logfn@N | geom@N */
bg_status bg_series_parse(const char* literal, bg_series** out);
bg_status bg_series_create(const double* re, const double* im /* nullable */,
                           int count, bg_series** out);
void bg_series_free(bg_series* s);
int bg_series_degree(const bg_series* s);
bg_status bg_series_coeff(const bg_series* s, int k, double* re, double* im);
bg_status bg_series_eval(const bg_series* s, double zre, double zim,
                         double* re, double* im);
bg_status bg_series_derivative(const bg_series* s, bg_series** out);
bg_status bg_series_dilate(const bg_series* s, double r, bg_series** out);

/* ---- fractional derivative R^{omega,nu} ------------------------------- */

bg_status bg_fracd_build(const bg_weight* source, const bg_weight* target,
                         int degree, bg_fracd** out);
void bg_fracd_free(bg_fracd* d);
bg_status bg_fracd_multiplier(const bg_fracd* d, int k, double* out);
bg_status bg_fracd_apply(const bg_fracd* d, const bg_series* f,
                         bg_series** out);
/* R^{omega,nu} f (z) = <f, B_z^nu>_omega, the integral route. */
bg_status bg_fracd_apply_integral(const bg_weight* source,
                                  const bg_weight* target, const bg_series* f,
                                  double zre, double zim, double* re,
                                  double* im);
/* out[0..2]: commutation, composition, inversion max relative deviations. */
bg_status bg_fracd_identity_residuals(const bg_weight* w, const bg_weight* v,
                                      const bg_weight* eta,
                                      const bg_weight* sigma, int degree,
                                      double out[3]);

/* ---- Bergman kernels --------------------------------------------------- */

bg_status bg_kernel_slice(const bg_weight* w, double zre, double zim, int N,
                          bg_series** out);
bg_status bg_kernel_dbar_slice(const bg_weight* w, double zre, double zim,
                               int order, int N, bg_series** out);
/* integral of |slice| nu dA over the disk; J radial nodes, M angles
 * (rounded up to a power of two). */
bg_status bg_kernel_a1_norm(const bg_series* slice, const bg_weight* nu, int J,
                            int M, double* out);
int bg_kernel_degree_for(double abs_z);
bg_status bg_kernel_plusn_deviation(const bg_weight* w, const bg_weight* v,
                                    int n_plus, double zre, double zim, int N,
                                    double* out);

/* ---- projection and pre-images ----------------------------------------- */

/* Round trip h -> g -> P_omega(g); recovered coefficients are returned.
 * method: "bloch" (needs alpha > 0) or "regular" (alpha ignored).
 * If use_grid is nonzero the projection integrates grid samples with J
 * radial nodes and M angles; otherwise the factored 1-D fast path is used.
 * force skips the numerical class gate. */
bg_status bg_preimage_roundtrip(const bg_weight* w, const bg_series* h,
                                double alpha, const char* method, int use_grid,
                                int J, int M, int force, bg_series** recovered);
/* max_theta |g_alpha(r e^{i theta})| at each radius. */
bg_status bg_little_bloch_curve(const bg_weight* w, const bg_series* h,
                                double alpha, const double* radii, int count,
                                double* out, int force);

/* ---- analysis ----------------------------------------------------------- */

/* ClassReport as JSON (verdicts, constants, fitted exponents). */
bg_status bg_classify_json(const bg_weight* w, double K, char* buf,
                           size_t buflen);
bg_status bg_bloch_seminorm(const bg_series* f, double* value, double* delta);
bg_status bg_besov_norm(const bg_series* f, double p, int Nd, double* value,
                        double* delta, int* diverged);
/* L^p_{lambda_omega} norm of (1-r)^alpha * h. */
bg_status bg_lp_lambda_norm(const bg_weight* w, const bg_series* h,
                            double alpha, double p, double* value,
                            double* delta, int* diverged);
/* |<f,g>_w - 4<f',g'>_{w*} - w(D) f(0) conj(g(0))| (absolute). */
bg_status bg_lp_residual(const bg_series* f, const bg_series* g,
                         const bg_weight* w, double* out);
/* relative residual of the fractional Littlewood-Paley identity */
bg_status bg_frac_lp_residual(const bg_series* f, const bg_series* g,
                              const bg_weight* w, const bg_weight* eta,
                              const bg_weight* nu, int N, int M, double* out);

#ifdef __cplusplus
}
#endif

#endif /* BERGMAN_H */
