#include <cmath>
#include <random>

#include "core/dispersion.hpp"
#include "core/sturm.hpp"
#include "doctest.h"

using namespace shearwave;

namespace {
DispersionInput random_input(std::mt19937& rng) {
    std::uniform_real_distribution<double> ug(-4.0, 4.0), ud(0.2, 2.5), ugr(0.5, 15.0),
        us(0.0, 2.0);
    std::uniform_int_distribution<int> uk(1, 8);
    DispersionInput in;
    in.gamma1 = ug(rng);
    in.gamma2 = ug(rng);
    in.d1 = ud(rng);
    in.d2 = ud(rng);
    in.g = ugr(rng);
    in.sigma = us(rng);
    in.k = uk(rng);
    return in;
}
}  // namespace

TEST_CASE("dispersion residual: irrotational root and constant term") {
    DispersionInput in;
    in.d1 = 0.4;
    in.d2 = 0.6;
    in.g = 2.0;
    in.sigma = 0.3;
    in.k = 2;
    const double x = std::sqrt((in.g + in.sigma * 4.0) * std::tanh(2.0) / 2.0);
    CHECK(std::fabs(dispersion_residual(x, in).cubic) < 1e-12);

    double c2, c1, c0;
    dispersion_cubic_coefficients(in, &c2, &c1, &c0);
    CHECK(dispersion_residual(0.0, in).cubic == doctest::Approx(c0).epsilon(1e-15));
}

TEST_CASE("the two algebraic routes agree") {
    std::mt19937 rng(415926);
    for (int i = 0; i < 50; ++i) {
        const DispersionInput in = random_input(rng);
        const double x = 0.05 + 4.0 * std::generate_canonical<double, 53>(rng);
        const DispersionResidual r = dispersion_residual(x, in);
        CHECK(std::fabs(r.cubic - r.dra) /
                  std::max({1.0, std::fabs(r.cubic), std::fabs(r.dra)}) <
              1e-10);
    }
}

TEST_CASE("solve_dispersion: irrotational single root sqrt(tanh 1)") {
    DispersionInput in;
    in.d1 = 0.5;
    in.d2 = 0.5;
    in.g = 1.0;
    in.sigma = 0.0;
    in.k = 1;
    const auto roots = solve_dispersion(in);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == doctest::Approx(std::sqrt(std::tanh(1.0))).epsilon(1e-12));
}

TEST_CASE("reduction chain: equal vorticity collapses to the radical formula") {
    std::mt19937 rng(271828);
    for (int i = 0; i < 100; ++i) {
        DispersionInput in = random_input(rng);
        in.gamma2 = in.gamma1;
        const double ref =
            special_case_equal_vorticity(in.gamma1, in.d1 + in.d2, in.k, in.g, in.sigma);
        const auto roots = solve_dispersion(in);
        REQUIRE(roots.size() >= 1);
        CHECK(roots.size() <= 3);
        double best = 1e300;
        for (double r : roots)
            best = std::min(best, std::fabs(r - ref) / std::max(1.0, std::fabs(ref)));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("equal-vorticity special case") {
    // gamma = 0 is the textbook irrotational relation
    for (int k : {1, 2, 5})
        CHECK(special_case_equal_vorticity(0.0, 1.3, k, 9.81, 0.07) ==
              doctest::Approx(std::sqrt((9.81 + 0.07 * k * k) * std::tanh(1.3 * k) / k))
                  .epsilon(1e-14));
    // decreasing in gamma
    double prev = 1e300;
    for (double gamma : {-2.0, -1.0, 0.0, 1.0, 4.0, 20.0}) {
        const double v = special_case_equal_vorticity(gamma, 1.0, 1, 9.81, 0.0);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("multiplier symbol values and limits") {
    const MultiplierSymbolInput in{1.0, 1.0, 0.0, 1.0, 1.0};
    const double coth1 = 1.0 / std::tanh(1.0);
    CHECK(multiplier_symbol(in, 1) ==
          doctest::Approx(1.0 / (1.0 + 2.0 * coth1)).epsilon(1e-14));
    CHECK(multiplier_symbol(in, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(1e4 * multiplier_symbol(in, 10000) == doctest::Approx(0.5).epsilon(1e-3));

    // vanishing denominator: gamma1 - gamma2 ~ -a [coth + coth] k
    const MultiplierSymbolInput bad{1.0, -2.0, 0.0, 40.0, 40.0};
    CHECK_THROWS_AS((void)multiplier_symbol(bad, 1), SingularError);
    CHECK_THROWS_AS((void)multiplier_symbol(in, -1), InvalidInput);
}

TEST_CASE("symbol decay bounds saturate") {
    const MultiplierSymbolInput in{1.0, 1.0, 0.0, 1.0, 1.0};
    const SymbolDecay k2 = symbol_decay_check(in, 2);
    CHECK(std::isfinite(k2.max_k_lambda));
    CHECK(std::isfinite(k2.max_k2_diff));
    const SymbolDecay a = symbol_decay_check(in, 1000);
    const SymbolDecay b = symbol_decay_check(in, 10000);
    CHECK(std::fabs(b.max_k_lambda - a.max_k_lambda) < 0.01 * a.max_k_lambda);
    CHECK(std::fabs(b.max_k2_diff - a.max_k2_diff) < 0.01 * a.max_k2_diff);
    CHECK_THROWS_AS((void)symbol_decay_check(in, 1), InvalidInput);
}

TEST_CASE("sigma = 0 specialization is the regular limit of the relation") {
    std::mt19937 rng(577215);
    for (int i = 0; i < 20; ++i) {
        DispersionInput in = random_input(rng);
        in.sigma = 0.0;
        DispersionInput tiny = in;
        tiny.sigma = 1e-300;
        const double x = 0.05 + 4.0 * std::generate_canonical<double, 53>(rng);
        const DispersionResidual a = dispersion_residual(x, in);
        const DispersionResidual b = dispersion_residual(x, tiny);
        CHECK(std::isfinite(a.cubic));
        CHECK(a.cubic == b.cubic);
        CHECK(a.dra == b.dra);
    }
}

TEST_CASE("interface coefficient identity a(p1) = sqrt(lambda) + gamma2 d2") {
    const VorticityProfile prof({-2.0, -1.0, 0.0}, {1.0, -2.0});
    for (double lambda : {6.0, 9.5, 20.0}) {
        const LaminarFlow flow(prof, lambda);
        const double d2 = flow.layer_thicknesses()[1];
        CHECK(flow.b_breakpoint(1) ==
              doctest::Approx(std::sqrt(lambda) + prof.vorticities()[1] * d2).epsilon(1e-13));
    }
}

TEST_CASE("coth evaluation across the series switch") {
    CHECK(coth(1e-5) == doctest::Approx(1.0 / std::tanh(1e-5)).epsilon(1e-13));
    CHECK(coth(2e-4) == doctest::Approx(1.0 / std::tanh(2e-4)).epsilon(1e-13));
    CHECK(coth(30.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(coth(-0.7) == doctest::Approx(1.0 / std::tanh(-0.7)).epsilon(1e-14));
}

TEST_CASE("dispersion against shooting: the two derivations coincide") {
    // irrotational fluid with an artificial interior breakpoint
    {
        const VorticityProfile prof({-1.0, -0.4, 0.0}, {0.0, 0.0});
        const PhysicalConstants cons(1.0, 0.5);
        const auto pair = dispersion_vs_shooting(prof, cons, 1);
        REQUIRE(pair.found);
        CHECK(std::fabs(pair.xi_at_root) < 1e-7);
        CHECK(std::fabs(pair.dra_residual) < 1e-6 * pair.residual_scale);
        CHECK(pair.nearest_root_rel < 1e-6);
    }
    // genuinely layered current
    {
        const VorticityProfile prof({-2.0, -1.0, 0.0}, {1.0, -2.0});
        const PhysicalConstants cons(9.81, 0.07);
        const auto pair = dispersion_vs_shooting(prof, cons, 2);
        REQUIRE(pair.found);
        CHECK(std::fabs(pair.dra_residual) < 1e-6 * pair.residual_scale);
        CHECK(pair.nearest_root_rel < 1e-6);

        // 1% off the root the relation is visibly violated
        const LaminarFlow flow(prof, pair.lambda_star * 1.01);
        const auto d = flow.layer_thicknesses();
        DispersionInput in{d[0], d[1], 1.0, -2.0, 9.81, 0.07, 2};
        CHECK(std::fabs(dispersion_residual(std::sqrt(pair.lambda_star * 1.01), in).dra) >
              1e-3);
    }
    CHECK_THROWS_AS(
        (void)dispersion_vs_shooting(irrotational_profile(-1.0), PhysicalConstants(1.0, 0.0), 1),
        InvalidInput);
}
