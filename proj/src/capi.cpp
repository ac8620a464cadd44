#include "shearwave/shearwave.h"

#include <cstring>
#include <string>
#include <vector>

#include "core/csv.hpp"
#include "core/dispersion.hpp"
#include "core/errors.hpp"
#include "core/laminar.hpp"
#include "core/parallel.hpp"
#include "core/profile.hpp"
#include "core/sturm.hpp"
#include "core/validation.hpp"
#include "core/wavefield.hpp"

using namespace shearwave;

extern "C" {

struct sw_profile {
    VorticityProfile impl;
};

struct sw_bifurcation {
    BifurcationPoint impl;
};

struct sw_field {
    WaveField impl;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

sw_status set_error(sw_status code, const char* what) {
    g_last_error = what ? what : "unknown error";
    return code;
}

template <class Fn>
sw_status guarded(Fn&& fn) {
    try {
        fn();
        return SW_OK;
    } catch (const InvalidInput& e) {
        return set_error(SW_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const DomainError& e) {
        return set_error(SW_ERROR_DOMAIN, e.what());
    } catch (const SingularError& e) {
        return set_error(SW_ERROR_SINGULAR, e.what());
    } catch (const InfeasibleModeError& e) {
        return set_error(SW_ERROR_INFEASIBLE, e.what());
    } catch (const AmplitudeError& e) {
        return set_error(SW_ERROR_AMPLITUDE, e.what());
    } catch (const std::exception& e) {
        return set_error(SW_ERROR_NUMERIC, e.what());
    }
}

sw_status require(bool cond, const char* what) {
    return cond ? SW_OK : set_error(SW_ERROR_INVALID_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* sw_last_error(void) { return g_last_error.c_str(); }

const char* sw_version(void) { return "shearwave 1.0.0"; }

sw_status sw_profile_create(const double* breakpoints, int n_breakpoints,
                            const double* vorticities, int n_vorticities, sw_profile** out) {
    if (sw_status s = require(breakpoints && vorticities && out && n_breakpoints >= 2 &&
                                  n_vorticities >= 1,
                              "sw_profile_create: bad arguments"))
        return s;
    return guarded([&] {
        *out = new sw_profile{
            VorticityProfile(std::vector<double>(breakpoints, breakpoints + n_breakpoints),
                             std::vector<double>(vorticities, vorticities + n_vorticities))};
    });
}

sw_status sw_profile_from_json(const char* json_text, sw_profile** out) {
    if (sw_status s = require(json_text && out, "sw_profile_from_json: bad arguments"))
        return s;
    return guarded([&] { *out = new sw_profile{VorticityProfile::from_json(json_text)}; });
}

void sw_profile_free(sw_profile* profile) { delete profile; }

int sw_profile_layer_count(const sw_profile* profile) {
    return profile ? static_cast<int>(profile->impl.layer_count()) : 0;
}

double sw_profile_p0(const sw_profile* profile) { return profile ? profile->impl.p0() : 0.0; }

double sw_profile_gamma_sup(const sw_profile* profile) {
    return profile ? profile->impl.gamma_sup() : 0.0;
}

sw_status sw_profile_gamma_at(const sw_profile* profile, double p, double* out) {
    if (sw_status s = require(profile && out, "sw_profile_gamma_at: bad arguments"))
        return s;
    return guarded([&] { *out = profile->impl.gamma_at(p); });
}

sw_status sw_profile_big_gamma(const sw_profile* profile, double p, double* out) {
    if (sw_status s = require(profile && out, "sw_profile_big_gamma: bad arguments"))
        return s;
    return guarded([&] { *out = profile->impl.big_gamma(p); });
}

sw_status sw_laminar_b(const sw_profile* profile, double lambda, double p, double* out) {
    if (sw_status s = require(profile && out, "sw_laminar_b: bad arguments"))
        return s;
    return guarded([&] { *out = LaminarFlow(profile->impl, lambda).coefficient_b(p); });
}

sw_status sw_laminar_height(const sw_profile* profile, double lambda, double p, double* out) {
    if (sw_status s = require(profile && out, "sw_laminar_height: bad arguments"))
        return s;
    return guarded([&] { *out = LaminarFlow(profile->impl, lambda).height(p); });
}

sw_status sw_laminar_depth(const sw_profile* profile, double lambda, double* out) {
    if (sw_status s = require(profile && out, "sw_laminar_depth: bad arguments"))
        return s;
    return guarded([&] { *out = LaminarFlow(profile->impl, lambda).depth(); });
}

sw_status sw_laminar_layer_thicknesses(const sw_profile* profile, double lambda,
                                       double* thicknesses) {
    if (sw_status s = require(profile && thicknesses, "sw_laminar_layer_thicknesses: bad arguments"))
        return s;
    return guarded([&] {
        const auto t = LaminarFlow(profile->impl, lambda).layer_thicknesses();
        std::memcpy(thicknesses, t.data(), t.size() * sizeof(double));
    });
}

sw_status sw_laminar_total_head(const sw_profile* profile, double lambda, double gravity,
                                double* out) {
    if (sw_status s = require(profile && out, "sw_laminar_total_head: bad arguments"))
        return s;
    return guarded([&] { *out = LaminarFlow(profile->impl, lambda).total_head(gravity); });
}

sw_status sw_laminar_surface_speed(const sw_profile* profile, double lambda, double* out) {
    if (sw_status s = require(profile && out, "sw_laminar_surface_speed: bad arguments"))
        return s;
    return guarded([&] { *out = LaminarFlow(profile->impl, lambda).surface_speed(); });
}

sw_status sw_laminar_sample(const sw_profile* profile, double lambda, int n, double* p, double* b,
                            double* height, double* gamma, double* big_gamma) {
    if (sw_status s = require(profile && n >= 2, "sw_laminar_sample: bad arguments"))
        return s;
    return guarded([&] {
        const LaminarFlow flow(profile->impl, lambda);
        const double p0 = profile->impl.p0();
        for (int i = 0; i < n; ++i) {
            const double pi = p0 * (1.0 - static_cast<double>(i) / (n - 1));
            if (p) p[i] = pi;
            if (b) b[i] = flow.coefficient_b(pi);
            if (height) height[i] = flow.height(pi);
            if (gamma) gamma[i] = profile->impl.gamma_at(pi);
            if (big_gamma) big_gamma[i] = profile->impl.big_gamma(pi);
        }
    });
}

sw_status sw_xi(const sw_profile* profile, double gravity, double sigma, double lambda, double mu,
                int steps_per_layer, double* xi_out, double* xi_cross_out) {
    if (sw_status s = require(profile && xi_out, "sw_xi: bad arguments"))
        return s;
    return guarded([&] {
        const PhysicalConstants c(gravity, sigma);
        if (steps_per_layer <= 0)
            steps_per_layer = kDefaultStepsPerLayer;
        if (xi_cross_out) {
            const XiPair pair = xi_with_cross_check(profile->impl, c, lambda, mu, steps_per_layer);
            *xi_out = pair.xi;
            *xi_cross_out = pair.xi_cross;
        } else {
            *xi_out = xi(profile->impl, c, lambda, mu, steps_per_layer);
        }
    });
}

sw_status sw_xi_derivatives(const sw_profile* profile, double gravity, double sigma,
                            double lambda, double mu, int steps_per_layer, double* xi_out,
                            double* xi_mu_out, double* xi_lambda_out,
                            double* xi_lambda_integral_out, int* integral_available_out) {
    if (sw_status s = require(profile, "sw_xi_derivatives: bad arguments"))
        return s;
    return guarded([&] {
        const PhysicalConstants c(gravity, sigma);
        if (steps_per_layer <= 0)
            steps_per_layer = kDefaultStepsPerLayer;
        const XiDerivatives d = xi_derivatives(profile->impl, c, lambda, mu, steps_per_layer);
        if (xi_out) *xi_out = d.xi;
        if (xi_mu_out) *xi_mu_out = d.xi_mu;
        if (xi_lambda_out) *xi_lambda_out = d.xi_lambda;
        if (xi_lambda_integral_out) *xi_lambda_integral_out = d.xi_lambda_integral;
        if (integral_available_out) *integral_available_out = d.integral_available ? 1 : 0;
    });
}

sw_status sw_lambda0(const sw_profile* profile, double gravity, double* out) {
    if (sw_status s = require(profile && out, "sw_lambda0: bad arguments"))
        return s;
    return guarded([&] { *out = lambda0(profile->impl, PhysicalConstants(gravity, 0.0)); });
}

sw_status sw_condition_d2(const sw_profile* profile, double gravity, double sigma, double* lhs,
                          double* rhs, int* holds) {
    if (sw_status s = require(profile, "sw_condition_d2: bad arguments"))
        return s;
    return guarded([&] {
        const ConditionD2 d2 = check_condition_d2(profile->impl, PhysicalConstants(gravity, sigma));
        if (lhs) *lhs = d2.lhs;
        if (rhs) *rhs = d2.rhs;
        if (holds) *holds = d2.holds ? 1 : 0;
    });
}

sw_status sw_mu_of_lambda(const sw_profile* profile, double gravity, double sigma, double lambda,
                          int steps_per_layer, double* out) {
    if (sw_status s = require(profile && out, "sw_mu_of_lambda: bad arguments"))
        return s;
    return guarded([&] {
        *out = mu_of_lambda(profile->impl, PhysicalConstants(gravity, sigma), lambda,
                            steps_per_layer <= 0 ? kDefaultStepsPerLayer : steps_per_layer);
    });
}

sw_status sw_min_period_divisor(const sw_profile* profile, double gravity, double sigma,
                                int steps_per_layer, int* out) {
    if (sw_status s = require(profile && out, "sw_min_period_divisor: bad arguments"))
        return s;
    return guarded([&] {
        *out = min_period_divisor(profile->impl, PhysicalConstants(gravity, sigma),
                                  steps_per_layer <= 0 ? kDefaultStepsPerLayer : steps_per_layer);
    });
}

sw_status sw_xi_scan(const sw_profile* profile, double gravity, double sigma, double lambda,
                     double mu_min, double mu_max, int n, int steps_per_layer, double* mu,
                     double* xi_arr, double* xi_mu_arr, double* xi_lambda_arr) {
    if (sw_status s = require(profile && n >= 2 && mu_max >= mu_min && mu_min >= 0.0,
                              "sw_xi_scan: bad arguments"))
        return s;
    return guarded([&] {
        const PhysicalConstants c(gravity, sigma);
        const int steps = steps_per_layer <= 0 ? kDefaultStepsPerLayer : steps_per_layer;
        parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
            const double m = mu_min + (mu_max - mu_min) * static_cast<double>(i) / (n - 1);
            const XiDerivatives d = xi_derivatives(profile->impl, c, lambda, m, steps);
            if (mu) mu[i] = m;
            if (xi_arr) xi_arr[i] = d.xi;
            if (xi_mu_arr) xi_mu_arr[i] = d.xi_mu;
            if (xi_lambda_arr) xi_lambda_arr[i] = d.xi_lambda;
        });
    });
}

sw_status sw_mu_curve(const sw_profile* profile, double gravity, double sigma, double lambda_max,
                      int n, int steps_per_layer, double* lambda_arr, double* mu_arr) {
    if (sw_status s = require(profile && n >= 2, "sw_mu_curve: bad arguments"))
        return s;
    return guarded([&] {
        const PhysicalConstants c(gravity, sigma);
        const int steps = steps_per_layer <= 0 ? kDefaultStepsPerLayer : steps_per_layer;
        const double lam0 = lambda0(profile->impl, c);
        if (!(lambda_max > lam0))
            throw DomainError("mu curve: lambda_max must exceed lambda0 = " +
                              std::to_string(lam0));
        parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
            const double lam = lam0 + (lambda_max - lam0) * static_cast<double>(i) / (n - 1);
            const double m = mu_of_lambda(profile->impl, c, lam, steps);
            if (lambda_arr) lambda_arr[i] = lam;
            if (mu_arr) mu_arr[i] = m;
        });
    });
}

sw_status sw_bifurcation_compute(const sw_profile* profile, double gravity, double sigma, int k,
                                 int n, int steps_per_layer, sw_bifurcation** out) {
    if (sw_status s = require(profile && out && k >= 1, "sw_bifurcation_compute: bad arguments"))
        return s;
    return guarded([&] {
        const PhysicalConstants c(gravity, sigma);
        const int steps = steps_per_layer <= 0 ? kDefaultStepsPerLayer : steps_per_layer;
        const int divisor = n >= 1 ? n : min_period_divisor(profile->impl, c, steps);
        *out = new sw_bifurcation{bifurcation_point(profile->impl, c, k, divisor, steps)};
    });
}

void sw_bifurcation_free(sw_bifurcation* bif) { delete bif; }

double sw_bifurcation_lambda(const sw_bifurcation* bif) { return bif ? bif->impl.lambda_k : 0.0; }
int sw_bifurcation_mode_index(const sw_bifurcation* bif) {
    return bif ? bif->impl.mode_index : 0;
}
int sw_bifurcation_period_divisor(const sw_bifurcation* bif) {
    return bif ? bif->impl.period_divisor : 0;
}
int sw_bifurcation_wavenumber(const sw_bifurcation* bif) {
    return bif ? bif->impl.wavenumber : 0;
}
int sw_bifurcation_at_lower_bound(const sw_bifurcation* bif) {
    return bif && bif->impl.at_lower_bound ? 1 : 0;
}
int sw_bifurcation_sample_count(const sw_bifurcation* bif) {
    return bif ? static_cast<int>(bif->impl.p.size()) : 0;
}

sw_status sw_bifurcation_samples(const sw_bifurcation* bif, double* p, double* v, double* v_p) {
    if (sw_status s = require(bif != nullptr, "sw_bifurcation_samples: bad arguments"))
        return s;
    return guarded([&] {
        const std::size_t n = bif->impl.p.size();
        if (p) std::memcpy(p, bif->impl.p.data(), n * sizeof(double));
        if (v) std::memcpy(v, bif->impl.v.data(), n * sizeof(double));
        if (v_p) std::memcpy(v_p, bif->impl.v_p.data(), n * sizeof(double));
    });
}

sw_status sw_dispersion_residual(double x, double d1, double d2, double gamma1, double gamma2,
                                 double g, double sigma, int k, double* cubic, double* dra) {
    return guarded([&] {
        const DispersionInput in{d1, d2, gamma1, gamma2, g, sigma, k};
        const DispersionResidual r = dispersion_residual(x, in);
        if (cubic) *cubic = r.cubic;
        if (dra) *dra = r.dra;
    });
}

sw_status sw_dispersion_solve(double d1, double d2, double gamma1, double gamma2, double g,
                              double sigma, int k, double* roots, int* count) {
    if (sw_status s = require(roots && count, "sw_dispersion_solve: bad arguments"))
        return s;
    return guarded([&] {
        const DispersionInput in{d1, d2, gamma1, gamma2, g, sigma, k};
        const auto r = solve_dispersion(in);
        *count = static_cast<int>(r.size());
        for (std::size_t i = 0; i < r.size() && i < 3; ++i)
            roots[i] = r[i];
    });
}

sw_status sw_dispersion_equal_vorticity(double gamma, double d, int k, double g, double sigma,
                                        double* out) {
    if (sw_status s = require(out != nullptr, "sw_dispersion_equal_vorticity: bad arguments"))
        return s;
    return guarded([&] { *out = special_case_equal_vorticity(gamma, d, k, g, sigma); });
}

sw_status sw_multiplier_symbol(double a_p1, double gamma1, double gamma2, double theta1,
                               double theta2, int k, double* out) {
    if (sw_status s = require(out != nullptr, "sw_multiplier_symbol: bad arguments"))
        return s;
    return guarded([&] {
        const MultiplierSymbolInput in{a_p1, gamma1, gamma2, theta1, theta2};
        *out = multiplier_symbol(in, k);
    });
}

sw_status sw_symbol_decay(double a_p1, double gamma1, double gamma2, double theta1, double theta2,
                          int k_max, double* max_k_lambda, double* max_k2_diff) {
    return guarded([&] {
        const MultiplierSymbolInput in{a_p1, gamma1, gamma2, theta1, theta2};
        const SymbolDecay d = symbol_decay_check(in, k_max);
        if (max_k_lambda) *max_k_lambda = d.max_k_lambda;
        if (max_k2_diff) *max_k2_diff = d.max_k2_diff;
    });
}

sw_status sw_field_create(const sw_profile* profile, double gravity, double sigma, int k, int n,
                          double lambda, double amplitude, int nq, int np_per_layer,
                          int steps_per_layer, sw_field** out) {
    if (sw_status s = require(profile && out, "sw_field_create: bad arguments"))
        return s;
    return guarded([&] {
        const PhysicalConstants c(gravity, sigma);
        const int steps = steps_per_layer <= 0 ? kDefaultStepsPerLayer : steps_per_layer;
        if (amplitude == 0.0 && lambda > 0.0) {
            *out = new sw_field{WaveField::laminar(profile->impl, c, lambda, nq, np_per_layer)};
            return;
        }
        const int divisor = n >= 1 ? n : min_period_divisor(profile->impl, c, steps);
        const BifurcationPoint bif = bifurcation_point(profile->impl, c, k, divisor, steps);
        *out = new sw_field{
            WaveField::first_order(profile->impl, c, bif, amplitude, nq, np_per_layer)};
    });
}

void sw_field_free(sw_field* field) { delete field; }

int sw_field_nq(const sw_field* field) { return field ? field->impl.nq() : 0; }
int sw_field_np(const sw_field* field) { return field ? field->impl.np() : 0; }
double sw_field_lambda(const sw_field* field) { return field ? field->impl.lambda() : 0.0; }
double sw_field_depth(const sw_field* field) { return field ? field->impl.flow().depth() : 0.0; }
double sw_field_period(const sw_field* field) { return field ? field->impl.period() : 0.0; }
int sw_field_wavenumber(const sw_field* field) { return field ? field->impl.wavenumber() : 0; }

sw_status sw_field_grid(const sw_field* field, double* q, double* p, double* h, double* h_p,
                        double* h_q) {
    if (sw_status s = require(field != nullptr, "sw_field_grid: bad arguments"))
        return s;
    return guarded([&] {
        const WaveField& f = field->impl;
        const auto& qs = f.q_grid();
        const auto& ps = f.p_grid();
        if (q) std::memcpy(q, qs.data(), qs.size() * sizeof(double));
        if (p) std::memcpy(p, ps.data(), ps.size() * sizeof(double));
        for (std::size_t r = 0; r < ps.size(); ++r) {
            for (std::size_t c = 0; c < qs.size(); ++c) {
                const std::size_t idx = r * qs.size() + c;
                if (h) h[idx] = f.h_grid(r, c);
                if (h_p) h_p[idx] = f.h_p(qs[c], ps[r]);
                if (h_q) h_q[idx] = f.h_q(qs[c], ps[r]);
            }
        }
    });
}

sw_status sw_field_surface(const sw_field* field, double* q, double* eta) {
    if (sw_status s = require(field != nullptr, "sw_field_surface: bad arguments"))
        return s;
    return guarded([&] {
        const WaveField& f = field->impl;
        const auto& qs = f.q_grid();
        for (std::size_t c = 0; c < qs.size(); ++c) {
            if (q) q[c] = qs[c];
            if (eta) eta[c] = f.eta(qs[c]);
        }
    });
}

sw_status sw_field_check_pbc(const sw_field* field, double* min_h_p, int* ok) {
    if (sw_status s = require(field != nullptr, "sw_field_check_pbc: bad arguments"))
        return s;
    return guarded([&] {
        const PbcCheck c = check_pbc(field->impl);
        if (min_h_p) *min_h_p = c.min_h_p;
        if (ok) *ok = c.ok ? 1 : 0;
    });
}

sw_status sw_field_pb_residual(const sw_field* field, double* interior, double* surface,
                               double* bottom) {
    if (sw_status s = require(field != nullptr, "sw_field_pb_residual: bad arguments"))
        return s;
    return guarded([&] {
        const WaveField& f = field->impl;
        const double q_head = f.flow().total_head(f.constants().gravity);
        const PbResidual r = pb_residual(f, q_head);
        if (interior)
            std::memcpy(interior, r.interior.data(), r.interior.size() * sizeof(double));
        if (surface) *surface = r.surface;
        if (bottom) *bottom = r.bottom;
    });
}

sw_status sw_field_physical_ray(const sw_field* field, double x, int samples, double* y,
                                double* psi, double* u_minus_c, double* v, double* pressure) {
    if (sw_status s = require(field && samples >= 2, "sw_field_physical_ray: bad arguments"))
        return s;
    return guarded([&] {
        const PhysicalRay ray = physical_fields(field->impl, x, samples);
        for (int i = 0; i < samples; ++i) {
            if (y) y[i] = ray.y[i];
            if (psi) psi[i] = ray.psi[i];
            if (u_minus_c) u_minus_c[i] = ray.u_minus_c[i];
            if (v) v[i] = ray.v[i];
            if (pressure) pressure[i] = ray.pressure[i];
        }
    });
}

sw_status sw_field_interface(const sw_field* field, int interface_index, double* y) {
    if (sw_status s = require(field && y, "sw_field_interface: bad arguments"))
        return s;
    return guarded([&] {
        const WaveField& f = field->impl;
        const auto& bp = f.profile().breakpoints();
        if (interface_index < 1 || interface_index + 1 >= static_cast<int>(bp.size()))
            throw InvalidInput("interface index out of range");
        const double d = f.flow().depth();
        const auto& qs = f.q_grid();
        for (std::size_t c = 0; c < qs.size(); ++c)
            y[c] = f.h(qs[c], bp[interface_index]) - d;
    });
}

sw_status sw_validate(const sw_profile* profile, double gravity, double sigma,
                      const char* out_dir, const char* config_hash, int steps_per_layer,
                      sw_report_line_cb line_cb, void* user, int* checks_failed) {
    if (sw_status s = require(profile != nullptr, "sw_validate: bad arguments"))
        return s;
    return guarded([&] {
        const PhysicalConstants c(gravity, sigma);
        const ValidationReport report =
            run_validation(profile->impl, c, out_dir ? out_dir : "",
                           config_hash ? config_hash : "", steps_per_layer);
        if (line_cb) {
            for (const auto& check : report.checks) {
                const std::string line = std::string(check.passed ? "ok   " : "FAIL ") +
                                         check.name + "  value=" + CsvWriter::format(check.value) +
                                         " bound=" + CsvWriter::format(check.threshold) +
                                         (check.note.empty() ? "" : "  " + check.note);
                line_cb(line.c_str(), user);
            }
        }
        if (checks_failed) *checks_failed = report.failed();
    });
}

}  // extern "C"
