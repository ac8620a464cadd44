#include <cmath>
#include <random>

#include "core/laminar.hpp"
#include "core/sturm.hpp"
#include "doctest.h"

using namespace shearwave;

namespace {

VorticityProfile two_layer() { return VorticityProfile({-2.0, -1.0, 0.0}, {1.0, -2.0}); }

// Closed-form Xi for the irrotational case on [-D, 0]: z'' = (mu/lambda) z.
double xi_exact_irrotational(double lambda, double mu, double g, double sigma, double depth) {
    if (mu == 0.0)
        return std::pow(lambda, 1.5) - g * depth;
    const double nu = std::sqrt(mu / lambda);
    return std::pow(lambda, 1.5) * std::cosh(nu * depth) -
           (g + sigma * mu) * std::sinh(nu * depth) / nu;
}

}  // namespace

TEST_CASE("left shot reproduces the irrotational closed form") {
    const auto prof = irrotational_profile(-1.0);
    const PhysicalConstants cons(1.0, 0.0);
    const ShootingResult res = shoot_left(prof, cons, 1.0, 1.0);
    CHECK(res.z.back() == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
    CHECK(res.w.back() == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));  // b = 1
    CHECK(res.z.front() == 0.0);
    CHECK(res.w.front() == 1.0);
    // trajectory matches sinh(p + 1) everywhere
    double worst = 0.0;
    for (std::size_t i = 0; i < res.p.size(); ++i)
        worst = std::max(worst, std::fabs(res.z[i] - std::sinh(res.p[i] + 1.0)));
    CHECK(worst < 1e-12);
}

TEST_CASE("left shot at mu = 0 matches the explicit integral solution") {
    const auto prof = two_layer();
    const PhysicalConstants cons(9.81, 0.0);
    const double lambda = 7.0;
    const ShootingResult res = shoot_left(prof, cons, lambda, 0.0);
    const LaminarFlow flow(prof, lambda);
    const double b03 = std::pow(flow.b_breakpoint(0), 3);
    double worst = 0.0;
    for (std::size_t i = 0; i < res.p.size(); i += 50)
        worst = std::max(worst,
                         std::fabs(res.z[i] - b03 * flow.inv_b3_integral(res.p[i])));
    CHECK(worst < 1e-12);
}

TEST_CASE("analytic constant-vorticity layer solution as integrator oracle") {
    const double gamma = 2.0, lambda = 5.0, mu = 3.0, p0 = -1.0;
    const auto prof = constant_vorticity_profile(p0, gamma);
    const double gamma_at_p0 = prof.big_gamma(p0);
    const AnalyticLayerSolution sol(gamma, lambda, mu, p0, 0.0, gamma_at_p0, 0.0, 1.0);

    // the fitted data is reproduced
    CHECK(sol.z(p0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sol.z_p(p0) == doctest::Approx(1.0).epsilon(1e-13));

    // residual of (b^3 z')' - mu b z via symbolic derivatives
    double scale = 0.0, worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
        const double p = p0 + (0.0 - p0) * i / 500.0;
        const double b = sol.b(p);
        const double res = b * b * b * sol.z_pp(p) + 3.0 * b * b * (-gamma / b) * sol.z_p(p) -
                           mu * b * sol.z(p);
        worst = std::max(worst, std::fabs(res));
        scale = std::max(scale, std::fabs(mu * b * sol.z(p)));
    }
    CHECK(worst < 1e-8 * scale);

    // shooting agrees with the closed form along the whole layer
    const ShootingResult shot = shoot_left(prof, PhysicalConstants(1.0, 0.0), lambda, mu);
    double diff = 0.0;
    for (std::size_t i = 0; i < shot.p.size(); i += 25)
        diff = std::max(diff, std::fabs(shot.z[i] - sol.z(shot.p[i])));
    CHECK(diff < 1e-8);

    // degenerate data fit -> zero solution
    const AnalyticLayerSolution trivial(gamma, lambda, mu, p0, 0.0, gamma_at_p0, 0.0, 0.0);
    CHECK(trivial.beta() == 0.0);
    CHECK(trivial.delta() == 0.0);
    CHECK(trivial.z(-0.5) == 0.0);

    CHECK_THROWS_AS(AnalyticLayerSolution(0.0, lambda, mu, p0, 0.0, 0.0, 0.0, 1.0), InvalidInput);
    CHECK_THROWS_AS(AnalyticLayerSolution(gamma, lambda, 0.0, p0, 0.0, gamma_at_p0, 0.0, 1.0),
                    SingularError);
}

TEST_CASE("right shot initial data and the g = 1, sigma = 0 line") {
    const auto prof = irrotational_profile(-1.0);
    const PhysicalConstants cons(1.0, 0.0);
    const ShootingResult res = shoot_right(prof, cons, 1.0, 0.0);
    CHECK(res.z.back() == doctest::Approx(1.0).epsilon(1e-13));   // v(0) = lambda^{3/2}
    CHECK(res.z.front() == doctest::Approx(0.0).epsilon(1e-12));  // v(p) = 1 + p
    for (std::size_t i = 0; i < res.p.size(); i += 100)
        CHECK(res.z[i] == doctest::Approx(1.0 + res.p[i]).epsilon(1e-11));

    const ShootingResult r2 = shoot_right(prof, PhysicalConstants(2.5, 1.5), 3.0, 2.0);
    CHECK(r2.z.back() == doctest::Approx(std::pow(3.0, 1.5)).epsilon(1e-13));
    // v'(0) = g + sigma mu, read back through the flux variable w = b^3 v'
    CHECK(r2.w.back() / std::pow(3.0, 1.5) ==
          doctest::Approx(2.5 + 1.5 * 2.0).epsilon(1e-13));
}

TEST_CASE("Xi diverges: decade probes decrease and stay negative") {
    const auto prof = irrotational_profile(-1.0);
    const PhysicalConstants cons(1.0, 1.0);
    const double l0 = lambda0(prof, cons);  // mu(lambda0) = 0 here
    for (double lam : {l0, l0 + 0.8}) {
        ScaledValue prev = xi_scaled(prof, cons, lam, 1e2);
        CHECK(prev.sign() == -1);
        for (double mu : {1e3, 1e4}) {
            const ScaledValue cur = xi_scaled(prof, cons, lam, mu);
            CHECK(cur.sign() == -1);
            CHECK(cur.less_than(prev));
            prev = cur;
        }
    }
}

TEST_CASE("xi: closed-form values and the Wronskian cross-check") {
    const auto prof = irrotational_profile(-1.0);
    const PhysicalConstants cons(1.0, 0.0);
    CHECK(xi(prof, cons, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(std::fabs(xi(prof, cons, 1.0, 0.0)) < 1e-12);  // lambda0 = 1 at mu = 0

    const XiPair pair = xi_with_cross_check(prof, cons, 1.0, 1.0);
    CHECK(pair.xi_cross == doctest::Approx(pair.xi).epsilon(1e-10));

    // grid of (lambda, mu) over a sheared profile
    const auto sheared = two_layer();
    const PhysicalConstants c2(9.81, 0.07);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double lam = 10.5 + i;
            const double mu = 7.0 * j;
            const XiPair p = xi_with_cross_check(sheared, c2, lam, mu);
            CHECK(std::fabs(p.xi - p.xi_cross) / std::max(1.0, std::fabs(p.xi)) < 1e-8);
        }
    CHECK_THROWS_AS((void)xi(sheared, c2, 3.0, 1.0), DomainError);  // below 2 sup Gamma
    CHECK_THROWS_AS((void)xi(sheared, c2, 10.0, -1.0), DomainError);
}

TEST_CASE("wronskian is constant along the trajectory") {
    const auto prof = two_layer();
    const PhysicalConstants cons(9.81, 0.07);
    const auto left = shoot_left(prof, cons, 11.0, 5.0);
    const auto right = shoot_right(prof, cons, 11.0, 5.0);
    CHECK(wronskian_drift(left, right, prof) < 1e-9);
}

TEST_CASE("integral (Picard) relation holds for the shooting trajectory") {
    const auto prof = two_layer();
    const PhysicalConstants cons(9.81, 0.07);
    CHECK(integral_relation_residual(shoot_left(prof, cons, 10.5, 4.0), prof) < 1e-6);
    const auto irrot = irrotational_profile(-1.0);
    CHECK(integral_relation_residual(shoot_left(irrot, PhysicalConstants(1.0, 0.0), 1.3, 2.0),
                                     irrot) < 1e-6);
}

TEST_CASE("integrator order under step halving is ~4") {
    const auto prof = irrotational_profile(-1.0);
    const PhysicalConstants cons(1.0, 0.0);
    const double exact = std::exp(-1.0);
    const double e1 = std::fabs(xi(prof, cons, 1.0, 1.0, 128) - exact);
    const double e2 = std::fabs(xi(prof, cons, 1.0, 1.0, 256) - exact);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 3.8);
}

TEST_CASE("xi derivatives against closed forms and finite differences") {
    const auto prof = irrotational_profile(-1.0);
    const PhysicalConstants cons(1.0, 0.0);
    const XiDerivatives d = xi_derivatives(prof, cons, 1.0, 1.0);
    // d/dmu [cosh(sqrt(mu)) - sinh(sqrt(mu))/sqrt(mu)] at mu = 1
    CHECK(d.xi_mu ==
          doctest::Approx((2.0 * std::sinh(1.0) - std::cosh(1.0)) / 2.0).epsilon(1e-9));

    // irrotational mu = 0: Xi_lambda = 3/2 sqrt(lambda)
    const XiDerivatives d0 = xi_derivatives(prof, cons, 1.7, 0.0);
    CHECK(d0.xi_lambda == doctest::Approx(1.5 * std::sqrt(1.7)).epsilon(1e-9));

    std::mt19937 rng(318);
    const auto sheared = two_layer();
    const PhysicalConstants c2(9.81, 0.07);
    std::uniform_real_distribution<double> ul(10.2, 16.0);
    std::uniform_real_distribution<double> um(0.1, 12.0);
    for (int i = 0; i < 20; ++i) {
        const double lam = ul(rng), mu = um(rng);
        const XiDerivatives dd = xi_derivatives(sheared, c2, lam, mu);
        const double hl = 1e-5 * std::max(1.0, lam), hm = 1e-5 * std::max(1.0, mu);
        const double fd_l = (xi(sheared, c2, lam + hl, mu) - xi(sheared, c2, lam - hl, mu)) /
                            (2.0 * hl);
        const double fd_m = (xi(sheared, c2, lam, mu + hm) - xi(sheared, c2, lam, mu - hm)) /
                            (2.0 * hm);
        CHECK(std::fabs(dd.xi_lambda - fd_l) / std::max(1.0, std::fabs(fd_l)) < 1e-4);
        CHECK(std::fabs(dd.xi_mu - fd_m) / std::max(1.0, std::fabs(fd_m)) < 1e-4);
        REQUIRE(dd.integral_available);
        CHECK(std::fabs(dd.xi_lambda - dd.xi_lambda_integral) /
                  std::max(1.0, std::fabs(dd.xi_lambda)) <
              1e-6);
    }
}

TEST_CASE("lambda0: irrotational closed form and quadrature oracle") {
    const auto prof = irrotational_profile(-1.0);
    CHECK(lambda0(prof, PhysicalConstants(1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(lambda0(prof, PhysicalConstants(8.0, 0.0)) == doctest::Approx(4.0).epsilon(1e-10));

    // two-layer: bisect the independent fine-grid quadrature of int b^-3
    const auto sheared = two_layer();
    const PhysicalConstants cons(9.81, 0.0);
    const auto quad_residual = [&](double lam) {
        const LaminarFlow flow(sheared, lam);
        double acc = 0.0;
        const auto& bp = sheared.breakpoints();
        for (std::size_t li = 0; li + 1 < bp.size(); ++li) {
            const long panels = 400000;
            for (long j = 0; j < panels; ++j) {
                const double p = bp[li] + (bp[li + 1] - bp[li]) * (j + 0.5) / panels;
                acc += (bp[li + 1] - bp[li]) / panels / std::pow(flow.coefficient_b(p), 3);
            }
        }
        return 9.81 * acc - 1.0;
    };
    double lo = 4.5, hi = 40.0;
    REQUIRE(quad_residual(lo) > 0.0);
    REQUIRE(quad_residual(hi) < 0.0);
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (quad_residual(mid) > 0.0 ? lo : hi) = mid;
    }
    CHECK(lambda0(sheared, cons) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-8));
}

TEST_CASE("condition (d2)") {
    const auto prof = irrotational_profile(-1.0);
    // lambda0 = 1, b = 1: lhs = int (p+1)^2 = 1/3, condition is 1/3 <= sigma
    const ConditionD2 d2 = check_condition_d2(prof, PhysicalConstants(1.0, 0.4));
    CHECK(d2.lhs == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(d2.rhs == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(d2.holds);
    CHECK(!check_condition_d2(prof, PhysicalConstants(1.0, 1e-6)).holds);
    CHECK(check_condition_d2(two_layer(), PhysicalConstants(9.81, 1e6)).holds);
}

TEST_CASE("mu_of_lambda: zero at lambda0 under (d2), closed-form oracle, monotone") {
    const auto prof = irrotational_profile(-1.0);
    const PhysicalConstants cons(1.0, 1.0);  // (d2) holds: 1/3 <= 1
    const double l0 = lambda0(prof, cons);
    CHECK(mu_of_lambda(prof, cons, l0) == doctest::Approx(0.0).epsilon(1e-9));

    // closed-form oracle at lambda = 2
    double lo = 1e-8, hi = 40.0;
    REQUIRE(xi_exact_irrotational(2.0, lo, 1.0, 1.0, 1.0) > 0.0);
    REQUIRE(xi_exact_irrotational(2.0, hi, 1.0, 1.0, 1.0) < 0.0);
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (xi_exact_irrotational(2.0, mid, 1.0, 1.0, 1.0) > 0.0 ? lo : hi) = mid;
    }
    CHECK(mu_of_lambda(prof, cons, 2.0) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-8));

    double prev = -1.0;
    for (int i = 0; i <= 10; ++i) {
        const double mu = mu_of_lambda(prof, cons, l0 + 0.1 * i);
        CHECK(mu > prev);
        prev = mu;
    }
    CHECK_THROWS_AS((void)mu_of_lambda(prof, cons, 0.5 * l0), DomainError);
}

TEST_CASE("period divisor") {
    CHECK(period_divisor_for(0.0) == 1);
    CHECK(period_divisor_for(5.3) == 3);
    CHECK(period_divisor_for(4.0) == 2);  // n^2 = mu(lambda0) admitted
    CHECK(period_divisor_for(1.0000000001) == 1);
    CHECK(min_period_divisor(irrotational_profile(-1.0), PhysicalConstants(1.0, 1.0)) == 1);
}

TEST_CASE("bifurcation points: ordering, eigenfunction, dispersion cross-check") {
    const auto prof = irrotational_profile(-1.0);
    const PhysicalConstants cons(1.0, 1.0);
    const int n = min_period_divisor(prof, cons);
    REQUIRE(n == 1);

    double prev = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const BifurcationPoint bif = bifurcation_point(prof, cons, k, n);
        CHECK(bif.lambda_k > prev);
        prev = bif.lambda_k;
        CHECK(std::fabs(xi(prof, cons, bif.lambda_k, std::pow(k * n, 2))) < 1e-7);
        CHECK(bif.v.front() == 0.0);
        double sup = 0.0, at_max = 0.0;
        for (double v : bif.v)
            if (std::fabs(v) > sup) {
                sup = std::fabs(v);
                at_max = v;
            }
        CHECK(sup == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(at_max > 0.0);
    }

    // k = n = 1 locates the same speed as the closed-form dispersion relation:
    // lambda = (g + sigma) tanh(d(lambda)) for the irrotational fluid.
    const BifurcationPoint bif = bifurcation_point(prof, cons, 1, 1);
    const LaminarFlow flow(prof, bif.lambda_k);
    CHECK(bif.lambda_k ==
          doctest::Approx(2.0 * std::tanh(flow.depth())).epsilon(1e-9));

    CHECK_THROWS_AS((void)bifurcation_point(two_layer(), PhysicalConstants(9.81, 0.07), 1, 1),
                    InfeasibleModeError);
}

TEST_CASE("find_xi_zero reaches roots below lambda0") {
    const auto prof = two_layer();
    const PhysicalConstants cons(9.81, 0.07);
    const double l0 = lambda0(prof, cons);
    double lam = 0.0;
    REQUIRE(find_xi_zero(prof, cons, 1.0, &lam));
    CHECK(lam < l0);
    CHECK(std::fabs(xi(prof, cons, lam, 1.0)) < 1e-6);
}

TEST_CASE("state renormalization keeps huge-mu evaluations usable") {
    const auto prof = irrotational_profile(-1.0);
    const PhysicalConstants cons(1.0, 1.0);
    const ScaledValue v = xi_scaled(prof, cons, 1.0, 1.0e6, 400);
    CHECK(std::isfinite(v.mantissa));
    CHECK(v.sign() == -1);          // far beyond mu(lambda0)
    CHECK(v.log_scale > 100.0);     // renormalization engaged
    const ScaledValue w = xi_scaled(prof, cons, 1.0, 4.0e6, 400);
    CHECK(w.less_than(v));
}
