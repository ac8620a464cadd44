#include "core/sturm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "core/gauss.hpp"

namespace shearwave {

namespace {

constexpr double kRenormThreshold = 1e150;

// b^2 = b2_at_upper + slope * (p - p_upper) within one layer.
struct Layer {
    double p_lo, p_hi;
    double b2_hi;   // b^2 at p_hi
    double gamma;
    double b(double p) const { return std::sqrt(b2_hi - 2.0 * gamma * (p - p_hi)); }
};

std::vector<Layer> make_layers(const VorticityProfile& profile, double lambda) {
    const double bound = 2.0 * profile.gamma_sup();
    if (!(lambda > bound))
        throw DomainError("lambda = " + std::to_string(lambda) + " must exceed 2*sup Gamma = " +
                          std::to_string(bound));
    const auto& bp = profile.breakpoints();
    std::vector<Layer> layers(profile.layer_count());
    for (std::size_t i = 0; i < layers.size(); ++i) {
        layers[i].p_lo = bp[i];
        layers[i].p_hi = bp[i + 1];
        layers[i].b2_hi = lambda - 2.0 * profile.big_gamma_breakpoint(i + 1);
        layers[i].gamma = profile.vorticities()[i];
    }
    return layers;
}

template <std::size_t N>
using State = std::array<double, N>;

// dz = w/b^3, dw = mu b z.
struct BaseRhs {
    double mu;
    void operator()(const Layer& lay, double p, const State<2>& s, State<2>& ds) const {
        const double b = lay.b(p);
        const double b3 = b * b * b;
        ds[0] = s[1] / b3;
        ds[1] = mu * b * s[0];
    }
};

// Augmented with the mu- and lambda-variational states (z, w, zm, wm, zl, wl).
struct VariationalRhs {
    double mu;
    void operator()(const Layer& lay, double p, const State<6>& s, State<6>& ds) const {
        const double b = lay.b(p);
        const double b3 = b * b * b;
        const double b5 = b3 * b * b;
        ds[0] = s[1] / b3;
        ds[1] = mu * b * s[0];
        ds[2] = s[3] / b3;
        ds[3] = b * s[0] + mu * b * s[2];
        ds[4] = s[5] / b3 - 1.5 * s[1] / b5;
        ds[5] = 0.5 * mu * s[0] / b + mu * b * s[4];
    }
};

template <std::size_t N, class Rhs>
struct Integrator {
    const Rhs& rhs;
    State<N> s;
    double log_scale = 0.0;

    // Recording buffers (optional).
    std::vector<double>* rec_p = nullptr;
    std::vector<State<N>>* rec_s = nullptr;
    std::vector<double>* rec_log = nullptr;

    void record(double p) {
        if (!rec_p) return;
        rec_p->push_back(p);
        rec_s->push_back(s);
        rec_log->push_back(log_scale);
    }

    void renormalize() {
        double m = 0.0;
        for (double v : s) m = std::max(m, std::fabs(v));
        if (m > kRenormThreshold) {
            const double inv = 1.0 / m;
            for (double& v : s) v *= inv;
            log_scale += std::log(m);
        }
    }

    // Classical fixed-step RK4 from p_from to p_to (either direction), the
    // whole span inside one layer.
    void run_layer(const Layer& lay, double p_from, double p_to, int steps) {
        const double h = (p_to - p_from) / steps;
        State<N> k1, k2, k3, k4, tmp;
        for (int j = 0; j < steps; ++j) {
            const double p = p_from + j * h;
            rhs(lay, p, s, k1);
            for (std::size_t i = 0; i < N; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
            rhs(lay, p + 0.5 * h, tmp, k2);
            for (std::size_t i = 0; i < N; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
            rhs(lay, p + 0.5 * h, tmp, k3);
            for (std::size_t i = 0; i < N; ++i) tmp[i] = s[i] + h * k3[i];
            rhs(lay, (j + 1 == steps) ? p_to : p + h, tmp, k4);
            for (std::size_t i = 0; i < N; ++i)
                s[i] += h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
            renormalize();
            record((j + 1 == steps) ? p_to : p + h);
        }
    }
};

int checked_steps(int steps_per_layer) {
    if (steps_per_layer <= 0)
        steps_per_layer = kDefaultStepsPerLayer;
    if (steps_per_layer % 2)
        ++steps_per_layer;  // composite Simpson over nodes wants even counts
    return steps_per_layer;
}

// Rescales recorded samples to the final common scale and fills the result.
template <std::size_t N>
void finalize_samples(ShootingResult& out, std::vector<double>& ps, std::vector<State<N>>& ss,
                      std::vector<double>& logs, double log_final, bool ascending) {
    const std::size_t n = ps.size();
    out.p.resize(n);
    out.z.resize(n);
    out.w.resize(n);
    if constexpr (N == 6) {
        out.z_mu.resize(n);
        out.w_mu.resize(n);
        out.z_lambda.resize(n);
        out.w_lambda.resize(n);
    }
    for (std::size_t idx = 0; idx < n; ++idx) {
        const std::size_t src = ascending ? idx : n - 1 - idx;
        const double f = std::exp(logs[src] - log_final);
        out.p[idx] = ps[src];
        out.z[idx] = ss[src][0] * f;
        out.w[idx] = ss[src][1] * f;
        if constexpr (N == 6) {
            out.z_mu[idx] = ss[src][2] * f;
            out.w_mu[idx] = ss[src][3] * f;
            out.z_lambda[idx] = ss[src][4] * f;
            out.w_lambda[idx] = ss[src][5] * f;
        }
    }
    out.log_scale = log_final;
}

template <std::size_t N>
void check_state(const State<N>& s, double lambda, double mu) {
    for (double v : s)
        if (!std::isfinite(v))
            throw NumericError("shooting integration failed at lambda = " +
                               std::to_string(lambda) + ", mu = " + std::to_string(mu) +
                               " (non-finite state)");
}

template <std::size_t N, class Rhs>
ShootingResult shoot_impl(const VorticityProfile& profile, double lambda, double mu,
                          int steps_per_layer, const Rhs& rhs, const State<N>& init, bool downward) {
    const auto layers = make_layers(profile, lambda);
    const int steps = checked_steps(steps_per_layer);

    ShootingResult out;
    out.lambda = lambda;
    out.mu = mu;

    std::vector<double> ps;
    std::vector<State<N>> ss;
    std::vector<double> logs;
    const std::size_t total = layers.size() * static_cast<std::size_t>(steps) + 1;
    ps.reserve(total);
    ss.reserve(total);
    logs.reserve(total);

    Integrator<N, Rhs> integ{rhs, init, 0.0, &ps, &ss, &logs};
    if (downward) {
        integ.record(0.0);
        for (std::size_t li = layers.size(); li-- > 0;)
            integ.run_layer(layers[li], layers[li].p_hi, layers[li].p_lo, steps);
    } else {
        integ.record(layers.front().p_lo);
        for (const Layer& lay : layers)
            integ.run_layer(lay, lay.p_lo, lay.p_hi, steps);
    }
    check_state<N>(integ.s, lambda, mu);
    finalize_samples<N>(out, ps, ss, logs, integ.log_scale, !downward);

    out.layer_first.resize(layers.size() + 1);
    for (std::size_t i = 0; i <= layers.size(); ++i)
        out.layer_first[i] = i * static_cast<std::size_t>(steps);
    return out;
}

// Endpoint-only left shot; no recording, used inside root-finding loops.
template <std::size_t N, class Rhs>
std::pair<State<N>, double> shoot_left_endpoint(const VorticityProfile& profile, double lambda,
                                                int steps_per_layer, const Rhs& rhs,
                                                const State<N>& init) {
    const auto layers = make_layers(profile, lambda);
    const int steps = checked_steps(steps_per_layer);
    Integrator<N, Rhs> integ{rhs, init, 0.0, nullptr, nullptr, nullptr};
    for (const Layer& lay : layers)
        integ.run_layer(lay, lay.p_lo, lay.p_hi, steps);
    check_state<N>(integ.s, lambda, rhs.mu);
    return {integ.s, integ.log_scale};
}

double b_at_p0(const VorticityProfile& profile, double lambda) {
    return std::sqrt(lambda - 2.0 * profile.big_gamma_breakpoint(0));
}

double tol_for(double x) { return 1e-10 * std::max(1.0, std::fabs(x)); }

}  // namespace

ShootingResult shoot_left(const VorticityProfile& profile, const PhysicalConstants& constants,
                          double lambda, double mu, int steps_per_layer, bool variational) {
    constants.validate();
    if (!(mu >= 0.0))
        throw DomainError("mu must be >= 0");
    const double b0 = b_at_p0(profile, lambda);
    ShootingResult out;
    if (variational) {
        VariationalRhs rhs{mu};
        out = shoot_impl<6>(profile, lambda, mu, steps_per_layer, rhs,
                            State<6>{0.0, b0 * b0 * b0, 0.0, 0.0, 0.0, 1.5 * b0}, false);
    } else {
        BaseRhs rhs{mu};
        out = shoot_impl<2>(profile, lambda, mu, steps_per_layer, rhs,
                            State<2>{0.0, b0 * b0 * b0}, false);
    }
    const double gs = constants.gravity + constants.surface_tension * mu;
    out.xi = (out.w.back() - gs * out.z.back()) * std::exp(out.log_scale);
    return out;
}

ShootingResult shoot_right(const VorticityProfile& profile, const PhysicalConstants& constants,
                           double lambda, double mu, int steps_per_layer) {
    constants.validate();
    if (!(mu >= 0.0))
        throw DomainError("mu must be >= 0");
    const double l32 = std::pow(lambda, 1.5);
    const double vp0 = constants.gravity + constants.surface_tension * mu;
    BaseRhs rhs{mu};
    // w = b^3 v'; b(0) = sqrt(lambda).
    return shoot_impl<2>(profile, lambda, mu, steps_per_layer, rhs, State<2>{l32, l32 * vp0}, true);
}

ScaledValue xi_scaled(const VorticityProfile& profile, const PhysicalConstants& constants,
                      double lambda, double mu, int steps_per_layer) {
    if (!(mu >= 0.0))
        throw DomainError("mu must be >= 0");
    const double b0 = b_at_p0(profile, lambda);
    BaseRhs rhs{mu};
    auto [s, log] =
        shoot_left_endpoint<2>(profile, lambda, steps_per_layer, rhs, State<2>{0.0, b0 * b0 * b0});
    const double gs = constants.gravity + constants.surface_tension * mu;
    return ScaledValue{s[1] - gs * s[0], log};
}

double xi(const VorticityProfile& profile, const PhysicalConstants& constants, double lambda,
          double mu, int steps_per_layer) {
    return xi_scaled(profile, constants, lambda, mu, steps_per_layer).value();
}

XiPair xi_with_cross_check(const VorticityProfile& profile, const PhysicalConstants& constants,
                           double lambda, double mu, int steps_per_layer) {
    XiPair out;
    out.xi = xi(profile, constants, lambda, mu, steps_per_layer);
    const ShootingResult right = shoot_right(profile, constants, lambda, mu, steps_per_layer);
    const double b0 = b_at_p0(profile, lambda);
    out.xi_cross = b0 * b0 * b0 * right.z.front() * std::exp(right.log_scale) /
                   std::pow(lambda, 1.5);
    return out;
}

XiDerivatives xi_derivatives(const VorticityProfile& profile, const PhysicalConstants& constants,
                             double lambda, double mu, int steps_per_layer) {
    const ShootingResult res = shoot_left(profile, constants, lambda, mu, steps_per_layer, true);
    const double gs = constants.gravity + constants.surface_tension * mu;
    const double scale = std::exp(res.log_scale);

    XiDerivatives out;
    const double xi_m = res.w.back() - gs * res.z.back();  // mantissa
    out.xi = xi_m * scale;
    out.xi_mu =
        (res.w_mu.back() - constants.surface_tension * res.z.back() - gs * res.z_mu.back()) * scale;
    out.xi_lambda = (res.w_lambda.back() - gs * res.z_lambda.back()) * scale;

    // Quadrature channel: Simpson per layer over the trajectory nodes of
    // 3b/2 z'^2 + mu/(2b) z^2, with z' = w/b^3.
    double zmax = 0.0;
    for (double v : res.z) zmax = std::max(zmax, std::fabs(v));
    if (std::fabs(res.z.back()) > 1e-10 * zmax && zmax > 0.0) {
        const auto layers = make_layers(profile, lambda);
        double integral = 0.0;
        for (std::size_t li = 0; li < layers.size(); ++li) {
            const std::size_t a = res.layer_first[li], b = res.layer_first[li + 1];
            const double h = (res.p[b] - res.p[a]) / static_cast<double>(b - a);
            double acc = 0.0;
            for (std::size_t j = a; j <= b; ++j) {
                const double bb = layers[li].b(res.p[j]);
                const double zp = res.w[j] / (bb * bb * bb);
                const double f = 1.5 * bb * zp * zp + 0.5 * mu * res.z[j] * res.z[j] / bb;
                const double coef = (j == a || j == b) ? 1.0 : ((j - a) % 2 ? 4.0 : 2.0);
                acc += coef * f;
            }
            integral += acc * h / 3.0;
        }
        out.xi_lambda_integral =
            (integral + res.z_lambda.back() * xi_m) / res.z.back() * scale;
        out.integral_available = true;
    } else {
        out.xi_lambda_integral = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

double lambda0(const VorticityProfile& profile, const PhysicalConstants& constants) {
    constants.validate();
    const double g = constants.gravity;
    const double lo_bound = 2.0 * profile.gamma_sup();
    const auto residual = [&](double lam) {
        return g * LaminarFlow(profile, lam).inv_b3_integral() - 1.0;
    };
    // residual is strictly decreasing; +inf at the left end, -1 at infinity.
    double span = std::max(1.0, std::fabs(lo_bound));
    double lo = lo_bound + span * 0.5;
    for (int i = 0; i < 200 && residual(lo) <= 0.0; ++i)
        lo = lo_bound + (lo - lo_bound) * 0.5;
    if (residual(lo) <= 0.0)
        throw NumericError("lambda0: failed to bracket from below");
    double hi = lo + 1.0;
    while (residual(hi) > 0.0) {
        hi = lo_bound + 2.0 * (hi - lo_bound);
        if (!(hi < 1e30))
            throw NumericError("lambda0: failed to bracket from above");
    }
    while (hi - lo > tol_for(hi)) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ConditionD2 check_condition_d2(const VorticityProfile& profile,
                               const PhysicalConstants& constants) {
    const double lam0 = lambda0(profile, constants);
    const LaminarFlow flow(profile, lam0);
    const auto& bp = profile.breakpoints();

    const auto evaluate = [&](int nodes) {
        auto [x, w] = gauss_legendre(nodes);
        double acc = 0.0;
        for (std::size_t li = 0; li + 1 < bp.size(); ++li) {
            const double mid = 0.5 * (bp[li] + bp[li + 1]);
            const double half = 0.5 * (bp[li + 1] - bp[li]);
            for (int j = 0; j < nodes; ++j) {
                const double p = mid + half * x[j];
                const double inner = flow.inv_b3_integral(p);
                acc += w[j] * half * flow.coefficient_b(p) * inner * inner;
            }
        }
        return acc;
    };

    double lhs = evaluate(64);
    for (int nodes = 128; nodes <= 1024; nodes *= 2) {
        const double next = evaluate(nodes);
        const double change = std::fabs(next - lhs) / std::max(1e-300, std::fabs(next));
        lhs = next;
        if (change < 1e-10)
            break;
    }

    ConditionD2 out;
    out.lhs = lhs;
    out.rhs = constants.surface_tension / (constants.gravity * constants.gravity);
    out.holds = out.lhs <= out.rhs;
    return out;
}

double mu_of_lambda(const VorticityProfile& profile, const PhysicalConstants& constants,
                    double lambda, int steps_per_layer) {
    const double lam0 = lambda0(profile, constants);
    if (lambda < lam0 - tol_for(lam0))
        throw DomainError("mu_of_lambda: lambda = " + std::to_string(lambda) +
                          " below lambda0 = " + std::to_string(lam0));
    lambda = std::max(lambda, lam0);

    const auto sgn = [&](double mu) {
        return xi_scaled(profile, constants, lambda, mu, steps_per_layer).sign();
    };

    double hi = 1.0;
    while (sgn(hi) >= 0) {
        hi *= 2.0;
        if (!(hi < 1e18))
            throw NumericError("mu_of_lambda: Xi never turned negative up to mu = 1e18");
    }
    double lo = 0.0;
    while (hi - lo > tol_for(hi)) {
        const double mid = 0.5 * (lo + hi);
        (sgn(mid) > 0 ? lo : hi) = mid;
    }
    const double mu = 0.5 * (lo + hi);

    // Sign-structure post-check: Xi > 0 strictly before the root, < 0 after.
    std::array<double, 32> probes{};
    double max_abs = 0.0;
    for (int i = 1; i <= 16; ++i) {
        probes[i - 1] = (mu > tol_for(mu))
                            ? xi(profile, constants, lambda, mu * i / 17.0, steps_per_layer)
                            : 0.0;
        probes[15 + i] =
            xi(profile, constants, lambda, mu + (mu + 1.0) * i / 16.0, steps_per_layer);
        max_abs = std::max({max_abs, std::fabs(probes[i - 1]), std::fabs(probes[15 + i])});
    }
    const double slack = 1e-7 * max_abs;
    for (int i = 0; i < 16; ++i) {
        if (mu > tol_for(mu) && probes[i] < -slack)
            throw NumericError("mu_of_lambda: Xi not positive left of the root at lambda = " +
                               std::to_string(lambda));
        if (probes[16 + i] > slack)
            throw NumericError("mu_of_lambda: Xi not negative right of the root at lambda = " +
                               std::to_string(lambda));
    }
    return mu;
}

int period_divisor_for(double mu0) {
    if (!(mu0 >= 0.0))
        throw DomainError("mu0 must be >= 0");
    const int n = static_cast<int>(std::ceil(std::sqrt(mu0) - 1e-9));
    return std::max(1, n);
}

int min_period_divisor(const VorticityProfile& profile, const PhysicalConstants& constants,
                       int steps_per_layer) {
    const double lam0 = lambda0(profile, constants);
    const double mu0 = mu_of_lambda(profile, constants, lam0, steps_per_layer);
    const int n = period_divisor_for(mu0);
    if (check_condition_d2(profile, constants).holds && n != 1)
        throw NumericError("min_period_divisor: condition (d2) holds but n = " +
                           std::to_string(n));
    return n;
}

BifurcationPoint bifurcation_point(const VorticityProfile& profile,
                                   const PhysicalConstants& constants, int k, int n,
                                   int steps_per_layer) {
    if (k < 1)
        throw InvalidInput("k must be >= 1");
    if (n < 1)
        throw InvalidInput("n must be >= 1");
    const double kn = static_cast<double>(k) * n;
    const double mubar = kn * kn;

    const double lam0 = lambda0(profile, constants);
    const double mu0 = mu_of_lambda(profile, constants, lam0, steps_per_layer);
    const double feas_tol = 1e-8 * std::max(1.0, mu0);
    if (mubar < mu0 - feas_tol)
        throw InfeasibleModeError("(kn)^2 = " + std::to_string(mubar) + " below mu(lambda0) = " +
                                  std::to_string(mu0) + "; mode infeasible");

    BifurcationPoint out;
    out.mode_index = k;
    out.period_divisor = n;
    out.wavenumber = k * n;

    if (std::fabs(mubar - mu0) <= feas_tol) {
        out.lambda_k = lam0;
        out.at_lower_bound = true;
    } else {
        // sign(mu(lambda) - mubar) == sign(Xi(lambda, mubar)) on [lambda0, inf).
        const auto sgn = [&](double lam) {
            return xi_scaled(profile, constants, lam, mubar, steps_per_layer).sign();
        };
        double lo = lam0, hi = lam0 + 1.0;
        while (sgn(hi) <= 0) {
            hi = lam0 + 2.0 * (hi - lam0);
            if (!(hi < 1e30))
                throw NumericError("bifurcation_point: no upper bracket for k = " +
                                   std::to_string(k));
        }
        while (hi - lo > tol_for(hi)) {
            const double mid = 0.5 * (lo + hi);
            (sgn(mid) > 0 ? hi : lo) = mid;
        }
        out.lambda_k = 0.5 * (lo + hi);
        out.at_lower_bound = false;
    }

    const ShootingResult shot =
        shoot_left(profile, constants, out.lambda_k, mubar, steps_per_layer, false);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < shot.z.size(); ++i)
        if (std::fabs(shot.z[i]) > std::fabs(shot.z[arg]))
            arg = i;
    const double m = shot.z[arg];
    if (m == 0.0)
        throw NumericError("bifurcation_point: trivial eigenfunction");
    const double factor = (m > 0.0 ? 1.0 : -1.0) / std::fabs(m);

    const auto layers = make_layers(profile, out.lambda_k);
    out.p = shot.p;
    out.v.resize(shot.z.size());
    out.v_p.resize(shot.z.size());
    std::size_t li = 0;
    for (std::size_t i = 0; i < shot.z.size(); ++i) {
        while (li + 1 < layers.size() && i >= shot.layer_first[li + 1]) ++li;
        const double b = layers[li].b(shot.p[i]);
        out.v[i] = shot.z[i] * factor;
        out.v_p[i] = shot.w[i] / (b * b * b) * factor;
    }
    return out;
}

bool find_xi_zero(const VorticityProfile& profile, const PhysicalConstants& constants, double mu,
                  double* lambda_out, int steps_per_layer, double lambda_hi) {
    const double lo_bound = 2.0 * profile.gamma_sup();
    const double lam0 = lambda0(profile, constants);
    if (lambda_hi <= lo_bound)
        lambda_hi = lam0 + 4.0 * (lam0 - lo_bound) + 10.0;

    // Evaluations very close to 2 sup Gamma can degenerate (b -> 0 at some
    // depth); a failed probe is treated as signless and skipped.
    const auto sgn = [&](double lam) {
        try {
            return xi_scaled(profile, constants, lam, mu, steps_per_layer).sign();
        } catch (const NumericError&) {
            return 0;
        }
    };

    // Dense scan for the first sign change, starting just above 2 sup Gamma;
    // signless probes (failed or exactly zero) are skipped.
    const int samples = 600;
    const double start = lo_bound + (lambda_hi - lo_bound) * 1e-6;
    double prev_lam = 0.0;
    int prev_sign = 0;
    for (int i = 0; i <= samples; ++i) {
        const double lam = start + (lambda_hi - start) * i / samples;
        const int s = sgn(lam);
        if (s == 0)
            continue;
        if (prev_sign != 0 && s != prev_sign) {
            double lo = prev_lam, hi = lam;
            while (hi - lo > tol_for(hi)) {
                const double mid = 0.5 * (lo + hi);
                (sgn(mid) == prev_sign ? lo : hi) = mid;
            }
            *lambda_out = 0.5 * (lo + hi);
            return true;
        }
        prev_lam = lam;
        prev_sign = s;
    }
    return false;
}

AnalyticLayerSolution::AnalyticLayerSolution(double gamma, double lambda, double mu, double pa,
                                             double pb, double big_gamma_at_pa, double z_a,
                                             double zp_a)
    : gamma_(gamma), lambda_(lambda), mu_(mu), pa_(pa), pb_(pb), gamma_a_(big_gamma_at_pa) {
    if (gamma_ == 0.0)
        throw InvalidInput("analytic layer solution requires gamma != 0");
    if (!(mu_ > 0.0))
        throw SingularError("analytic layer solution requires mu > 0 (modes degenerate)");
    m_ = std::sqrt(mu_);
    b_ref_ = b(pa_);
    const double a11 = mode(pa_, -1), a12 = mode(pa_, +1);
    const double a21 = mode_p(pa_, -1), a22 = mode_p(pa_, +1);
    const double det = a11 * a22 - a12 * a21;
    const double scale = std::fabs(a11 * a22) + std::fabs(a12 * a21);
    if (std::fabs(det) < 1e-14 * std::max(1.0, scale))
        throw SingularError("analytic layer solution: degenerate boundary data fit");
    beta_ = (z_a * a22 - zp_a * a12) / det;
    delta_ = (zp_a * a11 - z_a * a21) / det;
}

double AnalyticLayerSolution::b(double p) const {
    return std::sqrt(lambda_ - 2.0 * (gamma_a_ + gamma_ * (p - pa_)));
}

double AnalyticLayerSolution::mode(double p, int s) const {
    const double bp = b(p);
    return 2.0 * gamma_ / bp * std::exp(s * m_ * (bp - b_ref_) / gamma_);
}

double AnalyticLayerSolution::mode_p(double p, int s) const {
    const double bp = b(p);
    const double e = std::exp(s * m_ * (bp - b_ref_) / gamma_);
    return 2.0 * gamma_ * e * (gamma_ / (bp * bp * bp) - s * m_ / (bp * bp));
}

double AnalyticLayerSolution::mode_pp(double p, int s) const {
    const double bp = b(p);
    const double e = std::exp(s * m_ * (bp - b_ref_) / gamma_);
    const double b3 = bp * bp * bp;
    return 2.0 * gamma_ * e *
           (mu_ / b3 - 3.0 * s * m_ * gamma_ / (b3 * bp) + 3.0 * gamma_ * gamma_ / (b3 * bp * bp));
}

double AnalyticLayerSolution::z(double p) const {
    return beta_ * mode(p, -1) + delta_ * mode(p, +1);
}

double AnalyticLayerSolution::z_p(double p) const {
    return beta_ * mode_p(p, -1) + delta_ * mode_p(p, +1);
}

double AnalyticLayerSolution::z_pp(double p) const {
    return beta_ * mode_pp(p, -1) + delta_ * mode_pp(p, +1);
}

double integral_relation_residual(const ShootingResult& left, const VorticityProfile& profile) {
    const LaminarFlow flow(profile, left.lambda);
    const double b0 = flow.b_breakpoint(0);
    const double b03 = b0 * b0 * b0;

    // Cumulative trapezoid of b z and of its 1/b^3-weighted integral.
    const std::size_t n = left.p.size();
    double inner = 0.0;   // int_{p0}^p b z
    double outer = 0.0;   // int_{p0}^p (1/b^3) inner
    double prev_bz = flow.coefficient_b(left.p[0]) * left.z[0];
    double prev_w3 = 0.0;
    double worst = 0.0, zmax = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double h = left.p[i] - left.p[i - 1];
        const double b = flow.coefficient_b(left.p[i]);
        const double bz = b * left.z[i];
        inner += 0.5 * h * (prev_bz + bz);
        const double w3 = inner / (b * b * b);
        outer += 0.5 * h * (prev_w3 + w3);
        prev_bz = bz;
        prev_w3 = w3;
        const double picard = b03 * flow.inv_b3_integral(left.p[i]) + left.mu * outer;
        worst = std::max(worst, std::fabs(left.z[i] - picard));
        zmax = std::max(zmax, std::fabs(left.z[i]));
    }
    return worst / std::max(zmax, 1e-300);
}

double wronskian_drift(const ShootingResult& left, const ShootingResult& right,
                       const VorticityProfile& profile) {
    (void)profile;
    if (left.p.size() != right.p.size())
        throw InvalidInput("wronskian_drift: mismatched trajectories");
    // W = b^3 (v z' - z v') = v w_z - z w_v with w = b^3 u'. Any common scale
    // factor cancels in the relative drift.
    double ref = 0.0, worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < left.p.size(); ++i) {
        const double w = right.z[i] * left.w[i] - left.z[i] * right.w[i];
        if (i == 0)
            ref = w;
        worst = std::max(worst, std::fabs(w - ref));
        scale = std::max(scale, std::fabs(right.z[i] * left.w[i]) +
                                    std::fabs(left.z[i] * right.w[i]));
    }
    return worst / std::max(scale, 1e-300);
}

}  // namespace shearwave
