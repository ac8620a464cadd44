/* shearwave: steady periodic capillary-gravity waves over piecewise-constant
 * vorticity shear currents. C API of the shared library: opaque handles,
 * integer status codes, thread-local error messages.
 *
 * Conventions: the stream coordinate runs over [p0, 0] with p0 < 0; layer i
 * (1-based, bed to surface) carries the constant vorticity gamma_i; lambda is
 * the squared relative surface speed and must exceed 2 max Gamma;
 * steps_per_layer <= 0 selects the default (2000).
 */
#ifndef SHEARWAVE_H
#define SHEARWAVE_H

#include <stddef.h>

#if defined(_WIN32)
#define SW_API __declspec(dllexport)
#else
#define SW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sw_status {
    SW_OK = 0,
    SW_ERROR_INVALID_ARGUMENT = 1, /* malformed input or config fragment */
    SW_ERROR_DOMAIN = 2,           /* argument outside mathematical domain */
    SW_ERROR_NUMERIC = 3,          /* bracketing/bisection/post-check failure */
    SW_ERROR_SINGULAR = 4,         /* vanishing denominator or degenerate fit */
    SW_ERROR_INFEASIBLE = 5,       /* (kn)^2 below mu(lambda0) */
    SW_ERROR_AMPLITUDE = 6         /* amplitude outside the min h_p > 0 range */
} sw_status;

/* Message for the most recent failure on this thread. */
SW_API const char* sw_last_error(void);
SW_API const char* sw_version(void);

/* ---- vorticity profile ------------------------------------------------- */

typedef struct sw_profile sw_profile;

SW_API sw_status sw_profile_create(const double* breakpoints, int n_breakpoints,
                                   const double* vorticities, int n_vorticities,
                                   sw_profile** out);
/* {"breakpoints": [...], "vorticities": [...]}; errors carry the entry index. */
SW_API sw_status sw_profile_from_json(const char* json_text, sw_profile** out);
SW_API void sw_profile_free(sw_profile* profile);

SW_API int sw_profile_layer_count(const sw_profile* profile);
SW_API double sw_profile_p0(const sw_profile* profile);
SW_API double sw_profile_gamma_sup(const sw_profile* profile);
SW_API sw_status sw_profile_gamma_at(const sw_profile* profile, double p, double* out);
SW_API sw_status sw_profile_big_gamma(const sw_profile* profile, double p, double* out);

/* ---- laminar flow ------------------------------------------------------ */

SW_API sw_status sw_laminar_b(const sw_profile* profile, double lambda, double p, double* out);
SW_API sw_status sw_laminar_height(const sw_profile* profile, double lambda, double p,
                                   double* out);
SW_API sw_status sw_laminar_depth(const sw_profile* profile, double lambda, double* out);
/* thicknesses: array of layer_count entries */
SW_API sw_status sw_laminar_layer_thicknesses(const sw_profile* profile, double lambda,
                                              double* thicknesses);
SW_API sw_status sw_laminar_total_head(const sw_profile* profile, double lambda, double gravity,
                                       double* out);
SW_API sw_status sw_laminar_surface_speed(const sw_profile* profile, double lambda, double* out);
/* Uniform table of (p, b, H, gamma, Gamma); each array holds n entries. */
SW_API sw_status sw_laminar_sample(const sw_profile* profile, double lambda, int n, double* p,
                                   double* b, double* height, double* gamma, double* big_gamma);

/* ---- Sturm-Liouville shooting ------------------------------------------ */

SW_API sw_status sw_xi(const sw_profile* profile, double gravity, double sigma, double lambda,
                       double mu, int steps_per_layer, double* xi_out, double* xi_cross_out);
SW_API sw_status sw_xi_derivatives(const sw_profile* profile, double gravity, double sigma,
                                   double lambda, double mu, int steps_per_layer, double* xi_out,
                                   double* xi_mu_out, double* xi_lambda_out,
                                   double* xi_lambda_integral_out, int* integral_available_out);
SW_API sw_status sw_lambda0(const sw_profile* profile, double gravity, double* out);
SW_API sw_status sw_condition_d2(const sw_profile* profile, double gravity, double sigma,
                                 double* lhs, double* rhs, int* holds);
SW_API sw_status sw_mu_of_lambda(const sw_profile* profile, double gravity, double sigma,
                                 double lambda, int steps_per_layer, double* out);
SW_API sw_status sw_min_period_divisor(const sw_profile* profile, double gravity, double sigma,
                                       int steps_per_layer, int* out);
/* lambda/mu sweeps honoring SHEARWAVE_THREADS; arrays hold n entries. */
SW_API sw_status sw_xi_scan(const sw_profile* profile, double gravity, double sigma,
                            double lambda, double mu_min, double mu_max, int n,
                            int steps_per_layer, double* mu, double* xi, double* xi_mu,
                            double* xi_lambda);
SW_API sw_status sw_mu_curve(const sw_profile* profile, double gravity, double sigma,
                             double lambda_max, int n, int steps_per_layer, double* lambda,
                             double* mu);

typedef struct sw_bifurcation sw_bifurcation;

/* n <= 0 computes the minimal period divisor. */
SW_API sw_status sw_bifurcation_compute(const sw_profile* profile, double gravity, double sigma,
                                        int k, int n, int steps_per_layer, sw_bifurcation** out);
SW_API void sw_bifurcation_free(sw_bifurcation* bif);
SW_API double sw_bifurcation_lambda(const sw_bifurcation* bif);
SW_API int sw_bifurcation_mode_index(const sw_bifurcation* bif);
SW_API int sw_bifurcation_period_divisor(const sw_bifurcation* bif);
SW_API int sw_bifurcation_wavenumber(const sw_bifurcation* bif);
SW_API int sw_bifurcation_at_lower_bound(const sw_bifurcation* bif);
SW_API int sw_bifurcation_sample_count(const sw_bifurcation* bif);
/* Eigenfunction samples; p/v/v_p may each be NULL to skip. */
SW_API sw_status sw_bifurcation_samples(const sw_bifurcation* bif, double* p, double* v,
                                        double* v_p);

/* ---- dispersion relation ------------------------------------------------ */

SW_API sw_status sw_dispersion_residual(double x, double d1, double d2, double gamma1,
                                        double gamma2, double g, double sigma, int k,
                                        double* cubic, double* dra);
/* roots: room for 3; *count receives the number of positive roots. */
SW_API sw_status sw_dispersion_solve(double d1, double d2, double gamma1, double gamma2, double g,
                                     double sigma, int k, double* roots, int* count);
SW_API sw_status sw_dispersion_equal_vorticity(double gamma, double d, int k, double g,
                                               double sigma, double* out);
SW_API sw_status sw_multiplier_symbol(double a_p1, double gamma1, double gamma2, double theta1,
                                      double theta2, int k, double* out);
SW_API sw_status sw_symbol_decay(double a_p1, double gamma1, double gamma2, double theta1,
                                 double theta2, int k_max, double* max_k_lambda,
                                 double* max_k2_diff);

/* ---- first-order wave fields ------------------------------------------- */

typedef struct sw_field sw_field;

/* amplitude 0 with k = n = 1 builds the laminar field at `lambda`; otherwise
 * lambda is ignored and the field bifurcates from mode (k, n). */
SW_API sw_status sw_field_create(const sw_profile* profile, double gravity, double sigma, int k,
                                 int n, double lambda, double amplitude, int nq, int np_per_layer,
                                 int steps_per_layer, sw_field** out);
SW_API void sw_field_free(sw_field* field);
SW_API int sw_field_nq(const sw_field* field);
SW_API int sw_field_np(const sw_field* field);
SW_API double sw_field_lambda(const sw_field* field);
SW_API double sw_field_depth(const sw_field* field);
SW_API double sw_field_period(const sw_field* field);
SW_API int sw_field_wavenumber(const sw_field* field);
/* Grid dump: q (nq), p (np), and np*nq row-major h, h_p, h_q (exact values).
 * Any output pointer may be NULL. */
SW_API sw_status sw_field_grid(const sw_field* field, double* q, double* p, double* h,
                               double* h_p, double* h_q);
SW_API sw_status sw_field_surface(const sw_field* field, double* q, double* eta);
SW_API sw_status sw_field_check_pbc(const sw_field* field, double* min_h_p, int* ok);
/* interior: one entry per layer. */
SW_API sw_status sw_field_pb_residual(const sw_field* field, double* interior, double* surface,
                                      double* bottom);
/* Vertical ray at x: y, psi, u-c, v, P; each array holds `samples` entries. */
SW_API sw_status sw_field_physical_ray(const sw_field* field, double x, int samples, double* y,
                                       double* psi, double* u_minus_c, double* v,
                                       double* pressure);
/* Interface streamline i (1..N-1): y = h(q, p_i) - d on the q grid. */
SW_API sw_status sw_field_interface(const sw_field* field, int interface_index, double* y);

/* ---- validation suite --------------------------------------------------- */

typedef void (*sw_report_line_cb)(const char* line, void* user);

/* Runs the invariant suite; writes CSV artifacts into out_dir when nonempty
 * (stamped with config_hash), emits one line per check through the callback,
 * and stores the failure count. Deterministic for a fixed configuration. */
SW_API sw_status sw_validate(const sw_profile* profile, double gravity, double sigma,
                             const char* out_dir, const char* config_hash, int steps_per_layer,
                             sw_report_line_cb line_cb, void* user, int* checks_failed);

#ifdef __cplusplus
}
#endif

#endif /* SHEARWAVE_H */
