#include "core/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/cubic.hpp"
#include "core/errors.hpp"
#include "core/laminar.hpp"
#include "core/sturm.hpp"

namespace shearwave {

void DispersionInput::validate() const {
    if (!(d1 > 0.0)) throw InvalidInput("d1: must be > 0");
    if (!(d2 > 0.0)) throw InvalidInput("d2: must be > 0");
    if (!(g > 0.0)) throw InvalidInput("g: must be > 0");
    if (!(sigma >= 0.0)) throw InvalidInput("sigma: must be >= 0");
    if (k < 1) throw InvalidInput("k: must be >= 1");
}

double coth(double x) {
    const double ax = std::fabs(x);
    if (ax < 1e-4) {
        // 1/x + x/3 - x^3/45 + ...
        return 1.0 / x + x / 3.0 - x * x * x / 45.0;
    }
    return std::copysign(1.0 + 2.0 / std::expm1(2.0 * ax), x);
}

namespace {

struct HyperbolicTerms {
    double t1, t2;   // tanh(k d1), tanh(k d2)
    double th;       // tanh(k d) = (t1 + t2)/(1 + t1 t2)
    double r21;      // sinh(k d2) cosh(k d1) / cosh(k d)
    double r12;      // sinh(k d1) cosh(k d2) / cosh(k d)
    double r_cc;     // sinh(k d1) sinh(k d2) / cosh(k d)
    double r_ss;     // sinh(k d1) sinh(k d2) / sinh(k d)
};

HyperbolicTerms hyperbolics(const DispersionInput& in) {
    HyperbolicTerms h;
    const double k = in.k;
    h.t1 = std::tanh(k * in.d1);
    h.t2 = std::tanh(k * in.d2);
    const double denom = 1.0 + h.t1 * h.t2;
    h.th = (h.t1 + h.t2) / denom;
    h.r21 = h.t2 / denom;
    h.r12 = h.t1 / denom;
    h.r_cc = h.t1 * h.t2 / denom;
    h.r_ss = h.t1 * h.t2 / (h.t1 + h.t2);
    return h;
}

}  // namespace

void dispersion_cubic_coefficients(const DispersionInput& in, double* c2, double* c1, double* c0) {
    in.validate();
    const HyperbolicTerms h = hyperbolics(in);
    const double k = in.k;
    const double G = in.g + in.sigma * k * k;
    *c2 = (in.gamma2 * (k * in.d2 + h.r21) + in.gamma1 * h.r12) / k;
    *c1 = h.th * (in.gamma2 * in.gamma2 * in.d2 - G) / k +
          in.gamma2 * (in.gamma1 - in.gamma2) * h.r_cc / (k * k);
    *c0 = G * h.th / (k * k) * ((in.gamma2 - in.gamma1) * h.r_ss - in.gamma2 * in.d2 * k);
}

DispersionResidual dispersion_residual(double x, const DispersionInput& in) {
    in.validate();
    DispersionResidual out;

    double c2, c1, c0;
    dispersion_cubic_coefficients(in, &c2, &c1, &c0);
    out.cubic = ((x + c2) * x + c1) * x + c0;

    // coth-form route, denominators cleared:
    //   [(g2-g1) E2 s1 s2 - k (x + g2 d2) sd Ed] / (k^2 cosh(kd)).
    const HyperbolicTerms h = hyperbolics(in);
    const double k = in.k;
    const double G = in.g + in.sigma * k * k;
    const double e2 = G - x * in.gamma2 - x * x * k * coth(k * in.d2);
    const double ed = G - x * in.gamma2 - x * x * k * coth(k * (in.d1 + in.d2));
    out.dra = ((in.gamma2 - in.gamma1) * e2 * h.r_cc -
               k * (x + in.gamma2 * in.d2) * h.th * ed) /
              (k * k);
    return out;
}

std::vector<double> solve_dispersion(const DispersionInput& in) {
    in.validate();
    double c2, c1, c0;
    dispersion_cubic_coefficients(in, &c2, &c1, &c0);
    const auto cubic = [&](double x) { return ((x + c2) * x + c1) * x + c0; };

    std::vector<double> out;
    for (double r : solve_cubic_real(c2, c1, c0)) {
        if (!(r > 1e-14 * std::max({1.0, std::fabs(c2), std::fabs(c1), std::fabs(c0)})))
            continue;
        // One bracketed polish pass around the closed-form root.
        double delta = std::max(1e-12, 1e-9 * std::fabs(r));
        double lo = r - delta, hi = r + delta;
        bool bracketed = false;
        for (int i = 0; i < 40; ++i) {
            if (cubic(lo) == 0.0) { hi = lo; bracketed = true; break; }
            if (cubic(hi) == 0.0) { lo = hi; bracketed = true; break; }
            if ((cubic(lo) < 0.0) != (cubic(hi) < 0.0)) { bracketed = true; break; }
            delta *= 4.0;
            lo = r - delta;
            hi = r + delta;
        }
        if (bracketed) {
            while (hi - lo > 1e-12 * std::max(1.0, std::fabs(hi))) {
                const double mid = 0.5 * (lo + hi);
                if ((cubic(mid) < 0.0) == (cubic(lo) < 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            r = 0.5 * (lo + hi);
        }
        if (r > 0.0)
            out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double special_case_equal_vorticity(double gamma, double d, int k, double g, double sigma) {
    if (!(d > 0.0)) throw InvalidInput("d: must be > 0");
    if (k < 1) throw InvalidInput("k: must be >= 1");
    const double t = std::tanh(k * d) / k;
    const double G = g + sigma * static_cast<double>(k) * k;
    const double disc = std::sqrt(0.25 * gamma * gamma * t * t + G * t);
    // Rationalized for gamma > 0 where the direct form cancels.
    if (gamma > 0.0)
        return G * t / (0.5 * gamma * t + disc);
    return -0.5 * gamma * t + disc;
}

void MultiplierSymbolInput::validate() const {
    if (!(a_p1 > 0.0)) throw InvalidInput("a_p1: must be > 0");
    if (!(theta1 > 0.0)) throw InvalidInput("theta1: must be > 0");
    if (!(theta2 > 0.0)) throw InvalidInput("theta2: must be > 0");
}

double multiplier_symbol(const MultiplierSymbolInput& in, int k) {
    in.validate();
    if (k < 0)
        throw InvalidInput("k: must be >= 0");
    double trace;  // a(p1) [coth(Theta1 k) + coth(Theta2 k)] k, with the k=0 limit
    if (k == 0)
        trace = in.a_p1 * (1.0 / in.theta1 + 1.0 / in.theta2);
    else
        trace = in.a_p1 * (coth(in.theta1 * k) + coth(in.theta2 * k)) * k;
    const double denom = in.gamma1 - in.gamma2 + trace;
    const double scale = std::fabs(in.gamma1 - in.gamma2) + std::fabs(trace);
    if (std::fabs(denom) < 1e-12 * std::max(1.0, scale))
        throw SingularError("multiplier symbol: denominator vanishes at k = " + std::to_string(k));
    return in.a_p1 * in.a_p1 / denom;
}

SymbolDecay symbol_decay_check(const MultiplierSymbolInput& in, int k_max) {
    if (k_max < 2)
        throw InvalidInput("k_max: must be >= 2");
    SymbolDecay out;
    double prev = multiplier_symbol(in, 1);
    for (int k = 1; k <= k_max; ++k) {
        const double next = multiplier_symbol(in, k + 1);
        out.max_k_lambda = std::max(out.max_k_lambda, std::fabs(k * prev));
        out.max_k2_diff =
            std::max(out.max_k2_diff, std::fabs(static_cast<double>(k) * k * (next - prev)));
        prev = next;
    }
    return out;
}

DispersionShootingPair dispersion_vs_shooting(const VorticityProfile& profile,
                                              const PhysicalConstants& constants, int k,
                                              int steps_per_layer) {
    if (profile.layer_count() != 2)
        throw InvalidInput("dispersion_vs_shooting: requires a two-layer profile");
    if (k < 1)
        throw InvalidInput("k: must be >= 1");
    if (steps_per_layer <= 0)
        steps_per_layer = kDefaultStepsPerLayer;

    DispersionShootingPair out;
    const double mu = static_cast<double>(k) * k;
    double lam = 0.0;
    if (!find_xi_zero(profile, constants, mu, &lam, steps_per_layer))
        return out;
    out.found = true;
    out.lambda_star = lam;
    out.xi_at_root = xi(profile, constants, lam, mu, steps_per_layer);

    const LaminarFlow flow(profile, lam);
    const auto d = flow.layer_thicknesses();
    DispersionInput in;
    in.d1 = d[0];
    in.d2 = d[1];
    in.gamma1 = profile.vorticities()[0];
    in.gamma2 = profile.vorticities()[1];
    in.g = constants.gravity;
    in.sigma = constants.surface_tension;
    in.k = k;

    const double x = std::sqrt(lam);
    const DispersionResidual res = dispersion_residual(x, in);
    out.cubic_residual = res.cubic;
    out.dra_residual = res.dra;

    double c2, c1, c0;
    dispersion_cubic_coefficients(in, &c2, &c1, &c0);
    out.residual_scale = std::fabs(x * x * x) + std::fabs(c2 * x * x) + std::fabs(c1 * x) +
                         std::fabs(c0);

    out.nearest_root_rel = std::numeric_limits<double>::infinity();
    for (double r : solve_dispersion(in))
        out.nearest_root_rel =
            std::min(out.nearest_root_rel, std::fabs(r - x) / std::max(1.0, std::fabs(x)));
    return out;
}

}  // namespace shearwave
