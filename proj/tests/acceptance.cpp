// Acceptance suite: every release-gating property in one binary, one
// PASS/FAIL line per criterion, nonzero exit on any failure.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/dispersion.hpp"
#include "core/laminar.hpp"
#include "core/profile.hpp"
#include "core/sturm.hpp"
#include "core/wavefield.hpp"

using namespace shearwave;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& what, bool passed, const std::string& detail) {
    std::printf("%s criterion %2d: %s (%s)\n", passed ? "PASS" : "FAIL", number, what.c_str(),
                detail.c_str());
    if (!passed)
        ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

VorticityProfile two_layer() { return VorticityProfile({-2.0, -1.0, 0.0}, {1.0, -2.0}); }

// --- 1: analytic oracle exactness -----------------------------------------
void criterion_1() {
    const auto prof = irrotational_profile(-1.0);
    double worst = 0.0;
    for (double g : {1.0, 8.0, 9.81})
        worst = std::max(worst, std::fabs(lambda0(prof, PhysicalConstants(g, 0.0)) -
                                          std::cbrt(g * g)));
    const double xi_err =
        std::fabs(xi(prof, PhysicalConstants(1.0, 0.0), 1.0, 1.0) - std::exp(-1.0));
    criterion(1, "irrotational oracles lambda0 = g^(2/3), Xi(1,1) = 1/e",
              worst < 1e-9 && xi_err < 1e-8,
              "lambda0 err " + fmt(worst) + ", Xi err " + fmt(xi_err));
}

// --- 2: two-sided shooting agreement ---------------------------------------
void criterion_2() {
    const VorticityProfile profiles[] = {irrotational_profile(-1.0),
                                         constant_vorticity_profile(-1.0, 2.0), two_layer()};
    const PhysicalConstants cons(9.81, 0.07);
    double worst = 0.0;
    for (const auto& prof : profiles) {
        const double l0 = lambda0(prof, cons);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const double lam = l0 + (0.2 + i) * std::max(1.0, 0.3 * l0) / 3.0;
                const double mu = 25.0 * j / 9.0;
                const XiPair p = xi_with_cross_check(prof, cons, lam, mu);
                worst = std::max(worst, std::fabs(p.xi - p.xi_cross) /
                                            std::max(1.0, std::fabs(p.xi)));
            }
    }
    criterion(2, "Wronskian two-sided shooting on 10x10 grids, three profiles", worst < 1e-6,
              "worst rel " + fmt(worst));
}

// --- 3: derivative identities ----------------------------------------------
void criterion_3() {
    const VorticityProfile profiles[] = {irrotational_profile(-1.0), two_layer()};
    const PhysicalConstants cons(9.81, 0.07);
    std::mt19937 rng(62831853);
    double worst_fd = 0.0, worst_ch = 0.0, worst_sign = 1e300;
    for (const auto& prof : profiles) {
        const double l0 = lambda0(prof, cons);
        std::uniform_real_distribution<double> ul(l0 + 0.2, l0 + 6.0);
        std::uniform_real_distribution<double> um(0.1, 15.0);
        for (int i = 0; i < 10; ++i) {
            const double lam = ul(rng), mu = um(rng);
            const XiDerivatives d = xi_derivatives(prof, cons, lam, mu);
            const double hl = 1e-5 * std::max(1.0, lam), hm = 1e-5 * std::max(1.0, mu);
            const double fd_l =
                (xi(prof, cons, lam + hl, mu) - xi(prof, cons, lam - hl, mu)) / (2.0 * hl);
            const double fd_m =
                (xi(prof, cons, lam, mu + hm) - xi(prof, cons, lam, mu - hm)) / (2.0 * hm);
            worst_fd = std::max({worst_fd,
                                 std::fabs(d.xi_lambda - fd_l) / std::max(1.0, std::fabs(fd_l)),
                                 std::fabs(d.xi_mu - fd_m) / std::max(1.0, std::fabs(fd_m))});
            if (d.integral_available)
                worst_ch = std::max(worst_ch, std::fabs(d.xi_lambda - d.xi_lambda_integral) /
                                                  std::max(1.0, std::fabs(d.xi_lambda)));
        }
        // partial signs at genuine zeros with mu > 0
        for (int i = 1; i <= 5; ++i) {
            const double lam = l0 + i * std::max(0.2, 0.1 * l0);
            const double mu = mu_of_lambda(prof, cons, lam);
            if (mu <= 0.0)
                continue;
            const XiDerivatives d = xi_derivatives(prof, cons, lam, mu);
            worst_sign = std::min({worst_sign, d.xi_lambda, -d.xi_mu});
        }
    }
    criterion(3, "Xi_mu/Xi_lambda vs finite differences, channel agreement, zero signs",
              worst_fd < 1e-4 && worst_ch < 1e-6 && worst_sign > 0.0,
              "fd " + fmt(worst_fd) + ", channels " + fmt(worst_ch) + ", min(Xi_l, -Xi_m) " +
                  fmt(worst_sign));
}

// --- 4: sign and monotonicity structure ------------------------------------
void criterion_4() {
    const auto prof = irrotational_profile(-1.0);
    const PhysicalConstants cons(1.0, 1.0);
    const double l0 = lambda0(prof, cons);

    double min_xi0 = 1e300;
    for (int i = 1; i <= 25; ++i)
        min_xi0 = std::min(min_xi0, xi(prof, cons, l0 + 0.3 * i, 0.0));

    bool single_change = true;
    for (int i = 1; i <= 8 && single_change; ++i) {
        const double lam = l0 + 0.5 * i;
        const double mu_star = mu_of_lambda(prof, cons, lam);
        int changes = 0;
        ScaledValue prev = xi_scaled(prof, cons, lam, 0.0);
        for (int j = 1; j <= 60; ++j) {
            const ScaledValue cur =
                xi_scaled(prof, cons, lam, (2.0 * mu_star + 2.0) * j / 60.0);
            if (cur.sign() != 0 && prev.sign() != 0 && cur.sign() != prev.sign())
                ++changes;
            prev = cur;
        }
        single_change = changes == 1;
    }

    bool monotone = true;
    double prev_mu = -1.0;
    for (int i = 0; i < 50; ++i) {
        const double mu = mu_of_lambda(prof, cons, l0 + 0.15 * (i + 1));
        monotone = monotone && mu > prev_mu;
        prev_mu = mu;
    }

    const double r10 = mu_of_lambda(prof, cons, 10.0 * l0) / (10.0 * l0);
    const double r1000 = mu_of_lambda(prof, cons, 1000.0 * l0) / (1000.0 * l0);

    criterion(4, "Xi(.,0) > 0, unique sign change, mu(lambda) increasing, mu/lambda grows",
              min_xi0 > 0.0 && single_change && monotone && r1000 > r10,
              "min Xi(.,0) " + fmt(min_xi0) + ", mu/lam " + fmt(r10) + " -> " + fmt(r1000));
}

// --- 5: shooting vs dispersion on the layered current ----------------------
void criterion_5() {
    const auto prof = two_layer();
    const PhysicalConstants cons(9.81, 0.07);
    bool ok = true;
    std::string detail;
    for (int k = 1; k <= 3; ++k) {
        const auto pair = dispersion_vs_shooting(prof, cons, k);
        const bool this_ok = pair.found &&
                             std::fabs(pair.dra_residual) < 1e-6 * pair.residual_scale &&
                             pair.nearest_root_rel < 1e-6;
        ok = ok && this_ok;
        detail += (k > 1 ? "; " : "") + std::string("k=") + std::to_string(k) + " dra " +
                  fmt(pair.dra_residual) + " root gap " + fmt(pair.nearest_root_rel);
    }
    criterion(5, "Xi roots satisfy the closed-form relation (k = 1, 2, 3)", ok, detail);
}

// --- 6: reduction chain ------------------------------------------------------
void criterion_6() {
    std::mt19937 rng(16180339);
    std::uniform_real_distribution<double> ug(-4.0, 4.0), ud(0.2, 2.5), ugr(0.5, 15.0),
        us(0.0, 2.0);
    std::uniform_int_distribution<int> uk(1, 8);
    double worst = 0.0, worst0 = 0.0;
    for (int i = 0; i < 100; ++i) {
        DispersionInput in;
        in.gamma1 = in.gamma2 = ug(rng);
        in.d1 = ud(rng);
        in.d2 = ud(rng);
        in.g = ugr(rng);
        in.sigma = us(rng);
        in.k = uk(rng);
        const double ref =
            special_case_equal_vorticity(in.gamma1, in.d1 + in.d2, in.k, in.g, in.sigma);
        double best = 1e300;
        for (double r : solve_dispersion(in))
            best = std::min(best, std::fabs(r - ref) / std::max(1.0, std::fabs(ref)));
        worst = std::max(worst, best);

        in.gamma1 = in.gamma2 = 0.0;
        const double d = in.d1 + in.d2;
        const double ref0 = std::sqrt((in.g + in.sigma * in.k * in.k) *
                                      std::tanh(in.k * d) / in.k);
        best = 1e300;
        for (double r : solve_dispersion(in))
            best = std::min(best, std::fabs(r - ref0) / std::max(1.0, std::fabs(ref0)));
        worst0 = std::max(worst0, best);
    }
    criterion(6, "dispersion reduction chain over 100 randomized inputs",
              worst < 1e-10 && worst0 < 1e-10,
              "sheared " + fmt(worst) + ", irrotational " + fmt(worst0));
}

// --- 7: multiplier symbol decay ----------------------------------------------
void criterion_7() {
    const MultiplierSymbolInput in{1.0, 1.0, 0.0, 1.0, 1.0};
    const SymbolDecay half = symbol_decay_check(in, 5000);
    const SymbolDecay full = symbol_decay_check(in, 10000);
    const double drift = std::max(
        std::fabs(full.max_k_lambda - half.max_k_lambda) / half.max_k_lambda,
        std::fabs(full.max_k2_diff - half.max_k2_diff) / half.max_k2_diff);
    const double tail = std::fabs(1e4 * multiplier_symbol(in, 10000) - in.a_p1 / 2.0);
    criterion(7, "symbol decay bounds finite, saturated, tail -> a(p1)/2",
              std::isfinite(full.max_k_lambda) && std::isfinite(full.max_k2_diff) &&
                  drift < 0.01 && tail < 1e-3,
              "drift " + fmt(drift) + ", tail gap " + fmt(tail));
}

// --- 8: branch expansion order ------------------------------------------------
struct SlopeFit {
    double pb = 0.0;
    double weak = 0.0;
};

SlopeFit branch_slopes(const VorticityProfile& prof, const PhysicalConstants& cons) {
    const int n = min_period_divisor(prof, cons);
    const BifurcationPoint bif = bifurcation_point(prof, cons, 1, n);
    const LaminarFlow flow(prof, bif.lambda_k);
    const double q_head = flow.total_head(cons.gravity);

    const double amps[4] = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    double sup[4], wk[4];
    for (int i = 0; i < 4; ++i) {
        const WaveField f = WaveField::first_order(prof, cons, bif, amps[i], 256, 2000);
        const PbResidual r = pb_residual(f, q_head);
        double w = r.surface;
        for (double x : r.interior)
            w = std::max(w, x);
        sup[i] = w;
        double ww = 0.0;
        for (double x : weak_residual(f, default_bumps(f)))
            ww = std::max(ww, std::fabs(x));
        wk[i] = ww;
    }
    const auto fit = [&](const double* vals) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < 4; ++i) {
            const double x = std::log(amps[i]), y = std::log(vals[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        return (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    };
    return {fit(sup), fit(wk)};
}

void criterion_8() {
    const SlopeFit a = branch_slopes(irrotational_profile(-1.0), PhysicalConstants(1.0, 0.5));
    const SlopeFit b = branch_slopes(two_layer(), PhysicalConstants(1.0, 1.0));
    const auto ok = [](double s) { return s > 1.8 && s < 2.2; };
    criterion(8, "pb and weak residuals scale as s^2 along the branch",
              ok(a.pb) && ok(a.weak) && ok(b.pb) && ok(b.weak),
              "slopes " + fmt(a.pb) + "/" + fmt(a.weak) + " and " + fmt(b.pb) + "/" + fmt(b.weak));
}

// --- 9: laminar field consistency ---------------------------------------------
void criterion_9() {
    const auto prof = two_layer();
    const PhysicalConstants cons(9.81, 0.07);
    const WaveField f = WaveField::laminar(prof, cons, 12.0, 32, 400);
    const LaminarFlow& flow = f.flow();
    const PbResidual r = pb_residual(f, flow.total_head(cons.gravity));

    double interior = 0.0, coarse = 0.0;
    for (double v : r.interior)
        interior = std::max(interior, v);
    for (double v : r.interior_coarse)
        coarse = std::max(coarse, v);
    const bool floor_ok =
        interior < 1e-6 && r.surface < 1e-6 && r.bottom == 0.0 && coarse > 2.0 * interior;

    const PhysicalRay ray = physical_fields(f, 0.4, 300);
    double worst_u = 0.0, worst_v = 0.0, worst_omega = 0.0;
    const double dy = ray.y[1] - ray.y[0];
    for (std::size_t i = 0; i < ray.y.size(); ++i) {
        worst_v = std::max(worst_v, std::fabs(ray.v[i]));
        const double p = flow.p_of_height(ray.y[i] + flow.depth());
        worst_u = std::max(worst_u, std::fabs(ray.u_minus_c[i] + flow.coefficient_b(p)));
    }
    for (std::size_t i = 1; i + 1 < ray.y.size(); ++i) {
        const double p_up = flow.p_of_height(ray.y[i - 1] + flow.depth());
        const double p_dn = flow.p_of_height(ray.y[i + 1] + flow.depth());
        if (prof.layer_of(p_up) != prof.layer_of(p_dn))
            continue;
        const double p = flow.p_of_height(ray.y[i] + flow.depth());
        const double uy = (ray.u_minus_c[i + 1] - ray.u_minus_c[i - 1]) / (2.0 * dy);
        worst_omega = std::max(worst_omega, std::fabs(uy - prof.gamma_at(p)));
    }

    const StreamSample s = stream_function(f, 0.4);
    const double bed_err = std::fabs(s.psi.back() + prof.p0());

    criterion(9, "laminar fields: residual floor, v = 0, u - c = -b, bed flux, vorticity",
              floor_ok && worst_v == 0.0 && worst_u < 1e-10 && bed_err < 1e-8 &&
                  worst_omega < 100.0 * dy * dy + 1e-8,
              "interior " + fmt(interior) + ", u " + fmt(worst_u) + ", bed " + fmt(bed_err) +
                  ", omega " + fmt(worst_omega));
}

// --- 10: determinism of the validate artifacts ---------------------------------
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string locate_cli() {
    if (const char* env = std::getenv("SHEARWAVE_CLI"))
        return env;
    // Fall back to the sibling tools directory of this test binary.
    std::error_code ec;
    const fs::path self = fs::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        const fs::path guess = self.parent_path().parent_path() / "tools" / "shearwave";
        if (fs::exists(guess))
            return guess.string();
    }
    return {};
}

void criterion_10() {
    const std::string cli = locate_cli();
    if (cli.empty()) {
        criterion(10, "byte-identical validate artifacts", false,
                  "SHEARWAVE_CLI not set and no sibling tools/shearwave");
        return;
    }
    const fs::path base = fs::temp_directory_path() / "sw_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    const fs::path cfg = base / "config.json";
    {
        std::ofstream out(cfg, std::ios::binary);
        out << R"({
  "profile": {"breakpoints": [-1.0, 0.0], "vorticities": [0.0]},
  "gravity": 1.0,
  "surface_tension": 1.0
})";
    }
    const auto run_validate = [&](const std::string& dir) {
        const std::string cmd = cli + " validate --config " + cfg.string() + " --out " + dir +
                                " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const int rc1 = run_validate((base / "a").string());
    const int rc2 = run_validate((base / "b").string());

    bool identical = rc1 == 0 && rc2 == 0;
    int compared = 0;
    if (identical) {
        for (const auto& entry : fs::directory_iterator(base / "a")) {
            if (entry.path().extension() != ".csv")
                continue;
            ++compared;
            identical = identical &&
                        slurp(entry.path()) == slurp(base / "b" / entry.path().filename());
        }
        identical = identical && compared >= 4;
    }
    criterion(10, "two validate runs produce byte-identical CSV artifacts", identical,
              "compared " + std::to_string(compared) + " files, exits " + std::to_string(rc1) +
                  "/" + std::to_string(rc2));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
