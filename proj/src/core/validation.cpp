#include "core/validation.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "core/csv.hpp"
#include "core/dispersion.hpp"
#include "core/laminar.hpp"
#include "core/parallel.hpp"
#include "core/sturm.hpp"
#include "core/wavefield.hpp"

namespace shearwave {

int ValidationReport::failed() const {
    int n = 0;
    for (const auto& c : checks)
        n += c.passed ? 0 : 1;
    return n;
}

namespace {

struct Suite {
    const VorticityProfile& profile;
    const PhysicalConstants& constants;
    int steps;
    ValidationReport report;

    void add(const std::string& name, bool passed, double value, double threshold,
             std::string note = "") {
        report.checks.push_back({name, passed, value, threshold, std::move(note)});
    }
    /// value must be <= threshold.
    void add_le(const std::string& name, double value, double threshold, std::string note = "") {
        add(name, value <= threshold, value, threshold, std::move(note));
    }
    /// value must be >= threshold.
    void add_ge(const std::string& name, double value, double threshold, std::string note = "") {
        add(name, value >= threshold, value, threshold, std::move(note));
    }
};

double rel_gap(double a, double b) {
    return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

void profile_checks(Suite& s) {
    const auto& prof = s.profile;
    std::mt19937 rng(0x5eed0001);
    std::uniform_real_distribution<double> up(prof.p0(), 0.0);

    double worst_cont = 0.0;
    const auto& bp = prof.breakpoints();
    for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
        const double eps = 1e-9 * std::max(1.0, std::fabs(bp[i]));
        worst_cont = std::max(worst_cont,
                              std::fabs(prof.big_gamma(bp[i] - eps) - prof.big_gamma(bp[i] + eps)));
    }
    s.add_le("profile.gamma_continuity", worst_cont, 1e-7);
    s.add_le("profile.gamma_anchor", std::fabs(prof.big_gamma(0.0)), 0.0);

    double worst_dom = -1e300;
    for (int i = 0; i < 1000; ++i)
        worst_dom = std::max(worst_dom, prof.big_gamma(up(rng)) - prof.gamma_sup());
    s.add_le("profile.gamma_sup_dominates", worst_dom, 1e-12);
}

void laminar_checks(Suite& s, double lam) {
    const LaminarFlow flow(s.profile, lam);
    const auto& bp = s.profile.breakpoints();

    // H'' = gamma H'^3 via centered differences of the closed form.
    double worst_ode = 0.0, worst_mono = 1e300;
    for (std::size_t li = 0; li + 1 < bp.size(); ++li) {
        const double width = bp[li + 1] - bp[li];
        const double hstep = width * 1e-5;
        for (int j = 1; j < 32; ++j) {
            const double p = bp[li] + width * j / 32.0;
            if (p - hstep <= bp[li] || p + hstep >= bp[li + 1])
                continue;
            const double d2 =
                (flow.height(p + hstep) - 2.0 * flow.height(p) + flow.height(p - hstep)) /
                (hstep * hstep);
            const double hp = flow.height_derivative(p);
            worst_ode = std::max(worst_ode,
                                 std::fabs(d2 - s.profile.gamma_at(p) * hp * hp * hp));
            worst_mono = std::min(worst_mono, hp);
        }
    }
    s.add_le("laminar.ode_residual", worst_ode, 1e-4);
    s.add_ge("laminar.height_monotone", worst_mono, 1e-12);

    const double q = flow.total_head(s.constants.gravity);
    const double hp0 = flow.height_derivative(0.0);
    s.add_le("laminar.surface_condition",
             std::fabs(1.0 + (2.0 * s.constants.gravity * flow.depth() - q) * hp0 * hp0), 1e-12);

    // Closed-form depth against blunt midpoint quadrature.
    double quad = 0.0;
    const int panels = 200000;
    for (std::size_t li = 0; li + 1 < bp.size(); ++li) {
        const double width = bp[li + 1] - bp[li];
        for (int j = 0; j < panels; ++j)
            quad += width / panels / flow.coefficient_b(bp[li] + width * (j + 0.5) / panels);
    }
    s.add_le("laminar.depth_quadrature", rel_gap(quad, flow.depth()), 1e-9);

    double sum = 0.0;
    for (double t : flow.layer_thicknesses())
        sum += t;
    s.add_le("laminar.thicknesses_telescope", rel_gap(sum, flow.depth()), 1e-14);
}

void sturm_checks(Suite& s, double lam0) {
    const auto& prof = s.profile;
    const auto& cons = s.constants;

    s.add_le("sturm.lambda0_residual",
             std::fabs(cons.gravity * LaminarFlow(prof, lam0).inv_b3_integral() - 1.0), 1e-9);

    const double span = std::max(1.0, 0.5 * lam0);
    // Wronskian two-sided agreement on a 5x5 grid.
    {
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                const double lam = lam0 + span * (0.2 + i) / 5.0;
                const double mu = 25.0 * j / 5.0;
                const XiPair pair = xi_with_cross_check(prof, cons, lam, mu, s.steps);
                worst = std::max(worst, rel_gap(pair.xi, pair.xi_cross));
            }
        }
        s.add_le("sturm.wronskian_two_sided", worst, 1e-6);
    }
    {
        const double lam = lam0 + 0.7 * span;
        const auto left = shoot_left(prof, cons, lam, 3.7, s.steps);
        const auto right = shoot_right(prof, cons, lam, 3.7, s.steps);
        s.add_le("sturm.wronskian_constancy", wronskian_drift(left, right, prof), 1e-8);
        s.add_le("sturm.integral_relation", integral_relation_residual(left, prof), 1e-5);
    }

    // Observed order of the integrator under step halving.
    {
        const double lam = lam0 + 0.4 * span;
        const double x1 = xi(prof, cons, lam, 2.0, 128);
        const double x2 = xi(prof, cons, lam, 2.0, 256);
        const double x4 = xi(prof, cons, lam, 2.0, 512);
        const double order = std::log2(std::fabs((x1 - x2) / (x2 - x4)));
        s.add_ge("sturm.step_halving_order", order, 3.8);
    }

    // Derivatives against central differences, and the two lambda channels.
    {
        std::mt19937 rng(0x5eed0002);
        std::uniform_real_distribution<double> ul(lam0 + 0.05 * span, lam0 + 2.0 * span);
        std::uniform_real_distribution<double> um(0.1, 12.0);
        double worst_fd = 0.0, worst_ch = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double lam = ul(rng), mu = um(rng);
            const XiDerivatives d = xi_derivatives(prof, cons, lam, mu, s.steps);
            const double hl = 1e-5 * std::max(1.0, std::fabs(lam));
            const double hm = 1e-5 * std::max(1.0, mu);
            const double fd_l =
                (xi(prof, cons, lam + hl, mu, s.steps) - xi(prof, cons, lam - hl, mu, s.steps)) /
                (2.0 * hl);
            const double fd_m =
                (xi(prof, cons, lam, mu + hm, s.steps) - xi(prof, cons, lam, mu - hm, s.steps)) /
                (2.0 * hm);
            worst_fd = std::max({worst_fd, rel_gap(d.xi_lambda, fd_l), rel_gap(d.xi_mu, fd_m)});
            if (d.integral_available)
                worst_ch = std::max(worst_ch, rel_gap(d.xi_lambda, d.xi_lambda_integral));
        }
        s.add_le("sturm.fd_derivatives", worst_fd, 1e-4);
        s.add_le("sturm.xi_lambda_channels", worst_ch, 1e-6);
    }

    // Xi(lambda, 0) > 0 to the right of lambda0.
    {
        double worst = 1e300;
        for (int i = 1; i <= 25; ++i)
            worst = std::min(worst, xi(prof, cons, lam0 + span * i / 12.0, 0.0, s.steps));
        s.add_ge("sturm.xi_positive_mu0", worst, 0.0);
    }

    // mu(lambda): monotone, with the correct signs of the partials at zeros,
    // and a single sign change of Xi along mu.
    {
        double prev = -1.0;
        bool monotone = true;
        double worst_sign = 1e300;
        int bad_changes = 0;
        for (int i = 0; i < 10; ++i) {
            const double lam = lam0 + span * (i + 1) / 10.0;
            const double mu = mu_of_lambda(prof, cons, lam, s.steps);
            if (mu <= prev)
                monotone = false;
            prev = mu;
            if (i % 3 == 0) {
                const XiDerivatives d = xi_derivatives(prof, cons, lam, mu, s.steps);
                worst_sign = std::min({worst_sign, d.xi_lambda, -d.xi_mu});
                int changes = 0;
                ScaledValue last = xi_scaled(prof, cons, lam, 0.0, s.steps);
                for (int j = 1; j <= 40; ++j) {
                    const ScaledValue cur =
                        xi_scaled(prof, cons, lam, (2.0 * mu + 1.0) * j / 40.0, s.steps);
                    if (cur.sign() != 0 && last.sign() != 0 && cur.sign() != last.sign())
                        ++changes;
                    last = cur;
                }
                if (changes != 1)
                    ++bad_changes;
            }
        }
        s.add("sturm.mu_monotone", monotone, monotone ? 1.0 : 0.0, 1.0);
        s.add_ge("sturm.zero_partial_signs", worst_sign, 0.0);
        s.add("sturm.sign_change_unique", bad_changes == 0, bad_changes, 0.0);
    }

    // Xi -> -inf: beyond the crossing the probes decrease and stay negative.
    {
        const double lam = lam0 + 0.3 * span;
        const double mu_star = mu_of_lambda(prof, cons, lam, s.steps);
        bool ok = true;
        ScaledValue prev{1.0, 0.0};
        for (int i = 0; i < 3; ++i) {
            const double mu = std::max(std::pow(10.0, i + 2), mu_star * 2.0 * std::pow(4.0, i));
            const ScaledValue v = xi_scaled(prof, cons, lam, mu, s.steps);
            if (v.sign() >= 0 || (i > 0 && !v.less_than(prev)))
                ok = false;
            prev = v;
        }
        s.add("sturm.divergence_probes", ok, ok ? 1.0 : 0.0, 1.0);
    }
}

void dispersion_checks(Suite& s, double lam0) {
    std::mt19937 rng(0x5eed0003);
    std::uniform_real_distribution<double> ug(-4.0, 4.0);
    std::uniform_real_distribution<double> ud(0.2, 2.5);
    std::uniform_real_distribution<double> ugr(0.5, 15.0);
    std::uniform_real_distribution<double> us(0.0, 2.0);
    std::uniform_int_distribution<int> uk(1, 6);

    double worst_forms = 0.0, worst_red = 0.0;
    for (int i = 0; i < 30; ++i) {
        DispersionInput in;
        in.gamma1 = ug(rng);
        in.gamma2 = ug(rng);
        in.d1 = ud(rng);
        in.d2 = ud(rng);
        in.g = ugr(rng);
        in.sigma = us(rng);
        in.k = uk(rng);
        const double x = 0.1 + 3.0 * std::generate_canonical<double, 53>(rng);
        const DispersionResidual r = dispersion_residual(x, in);
        worst_forms = std::max(worst_forms, rel_gap(r.cubic, r.dra));

        in.gamma2 = in.gamma1;  // reduction case
        const double ref =
            special_case_equal_vorticity(in.gamma1, in.d1 + in.d2, in.k, in.g, in.sigma);
        double best = 1e300;
        for (double root : solve_dispersion(in))
            best = std::min(best, std::fabs(root - ref) / std::max(1.0, std::fabs(ref)));
        worst_red = std::max(worst_red, best);
    }
    s.add_le("dispersion.residual_forms_agree", worst_forms, 1e-10);
    s.add_le("dispersion.reduction_chain", worst_red, 1e-10);

    if (s.profile.layer_count() == 2) {
        double worst = 0.0;
        bool all_found = true;
        for (int k = 1; k <= 2; ++k) {
            const auto pair = dispersion_vs_shooting(s.profile, s.constants, k, s.steps);
            if (!pair.found) {
                all_found = false;
                continue;
            }
            worst = std::max(worst, std::fabs(pair.dra_residual) /
                                        std::max(1.0, pair.residual_scale));
            worst = std::max(worst, pair.nearest_root_rel);
        }
        s.add("dispersion.vs_shooting", all_found && worst < 1e-6, worst, 1e-6);

        const LaminarFlow flow(s.profile, lam0 + 1.0);
        const auto d = flow.layer_thicknesses();
        MultiplierSymbolInput in;
        in.a_p1 = flow.b_breakpoint(1);
        in.gamma1 = s.profile.vorticities()[0];
        in.gamma2 = s.profile.vorticities()[1];
        in.theta1 = d[0];
        in.theta2 = d[1];
        const SymbolDecay lo = symbol_decay_check(in, 5000);
        const SymbolDecay hi = symbol_decay_check(in, 10000);
        const double drift = std::max(rel_gap(lo.max_k_lambda, hi.max_k_lambda),
                                      rel_gap(lo.max_k2_diff, hi.max_k2_diff));
        const double tail = 10000.0 * multiplier_symbol(in, 10000);
        s.add_le("symbol.decay_saturation", drift, 0.01);
        s.add_le("symbol.tail_limit", std::fabs(tail - in.a_p1 / 2.0), 1e-3);
    }
}

void field_checks(Suite& s, double lam0) {
    const auto& prof = s.profile;
    const auto& cons = s.constants;
    const double lam = lam0 + std::max(0.5, 0.25 * lam0);

    const WaveField lamfield = WaveField::laminar(prof, cons, lam, 64, 120);
    const LaminarFlow& flow = lamfield.flow();
    const double q_head = flow.total_head(cons.gravity);

    // The finite-difference residuals of an exact solution are pure
    // discretization floor: small, and shrinking second order (the stride-2
    // report grows about fourfold).
    const PbResidual base = pb_residual(lamfield, q_head);
    double interior = 0.0, interior_coarse = 0.0;
    for (double r : base.interior)
        interior = std::max(interior, r);
    for (double r : base.interior_coarse)
        interior_coarse = std::max(interior_coarse, r);
    s.add_le("field.laminar_interior", interior, std::max(1e-8, 0.35 * interior_coarse));
    s.add_le("field.laminar_surface", base.surface, std::max(1e-8, 0.35 * base.surface_coarse));
    s.add_le("field.laminar_bottom", base.bottom, 0.0);

    const PbcCheck pbc = check_pbc(lamfield);
    double min_hp_exact = 1e300;
    for (std::size_t i = 0; i <= prof.layer_count(); ++i)
        min_hp_exact = std::min(min_hp_exact, 1.0 / flow.b_breakpoint(i));
    s.add("field.pbc_laminar",
          pbc.ok && std::fabs(pbc.min_h_p - min_hp_exact) < 1e-4 * std::max(1.0, min_hp_exact),
          pbc.min_h_p, min_hp_exact);

    // Aligned bumps vanish exactly; breakpoint-straddling ones sit on the
    // midpoint floor, which must shrink second order under refinement.
    double worst_weak = 0.0;
    for (double v : weak_residual(lamfield, default_bumps(lamfield)))
        worst_weak = std::max(worst_weak, std::fabs(v));
    const WaveField coarse_field = WaveField::laminar(prof, cons, lam, 64, 60);
    double worst_weak_coarse = 0.0;
    for (double v : weak_residual(coarse_field, default_bumps(coarse_field)))
        worst_weak_coarse = std::max(worst_weak_coarse, std::fabs(v));
    s.add_le("field.laminar_weak", worst_weak,
             std::max(1e-9, 0.4 * worst_weak_coarse));

    // Stream function and physical recovery on the laminar field.
    {
        const StreamSample ray = stream_function(lamfield, 0.3);
        s.add_le("stream.bed_value", std::fabs(ray.psi.back() + prof.p0()), 1e-8);

        double worst_level = 0.0;
        for (int j = 1; j < 6; ++j) {
            const double p = prof.p0() * j / 6.0;
            const double y = flow.height(p) - flow.depth();
            worst_level =
                std::max(worst_level, std::fabs(stream_function_value(lamfield, 0.3, y) + p));
        }
        s.add_le("stream.level_consistency", worst_level, 1e-6);

        const PhysicalRay phys = physical_fields(lamfield, 0.3, 200);
        double worst_v = 0.0, worst_u = 0.0;
        for (int i = 0; i < 200; ++i) {
            worst_v = std::max(worst_v, std::fabs(phys.v[i]));
            const double p = flow.p_of_height(phys.y[i] + flow.depth());
            worst_u = std::max(worst_u, std::fabs(phys.u_minus_c[i] + flow.coefficient_b(p)));
        }
        s.add_le("physics.laminar_v_zero", worst_v, 1e-12);
        s.add_le("physics.laminar_u_profile", worst_u, 1e-10);
    }

    // First-order branch: residual ratio under amplitude halving ~ 4.
    {
        const int n = min_period_divisor(prof, cons, s.steps);
        const BifurcationPoint bif = bifurcation_point(prof, cons, 1, n, s.steps);
        const LaminarFlow bif_flow(prof, bif.lambda_k);
        const double cap = safe_amplitude_cap(bif_flow, bif);
        const double s1 = 0.4 * cap, s2 = 0.2 * cap;

        const double qh = bif_flow.total_head(cons.gravity);
        const auto sup_interior = [&](double amp) {
            const WaveField f = WaveField::first_order(prof, cons, bif, amp, 128, 400);
            const PbResidual r = pb_residual(f, qh);
            double w = r.surface;
            for (double x : r.interior)
                w = std::max(w, x);
            return w;
        };
        const double ratio = sup_interior(s1) / std::max(sup_interior(s2), 1e-300);
        s.add("field.branch_order_quick", ratio > 3.0 && ratio < 5.2, ratio, 4.0);
    }
}

}  // namespace

ValidationReport run_validation(const VorticityProfile& profile,
                                const PhysicalConstants& constants, const std::string& out_dir,
                                const std::string& config_hash, int steps_per_layer) {
    constants.validate();
    if (steps_per_layer <= 0)
        steps_per_layer = kDefaultStepsPerLayer;

    Suite suite{profile, constants, steps_per_layer, {}};
    const double lam0 = lambda0(profile, constants);

    profile_checks(suite);
    laminar_checks(suite, lam0 + std::max(0.5, 0.25 * lam0));
    sturm_checks(suite, lam0);
    dispersion_checks(suite, lam0);
    field_checks(suite, lam0);

    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        const std::string hash = config_hash.empty() ? "none" : config_hash;

        {
            const double lam = lam0 + std::max(0.5, 0.25 * lam0);
            const LaminarFlow flow(profile, lam);
            CsvWriter csv(out_dir + "/laminar.csv", {"p", "b", "H", "gamma", "Gamma"}, hash);
            const int n = 201;
            for (int i = 0; i < n; ++i) {
                const double p = profile.p0() * (1.0 - static_cast<double>(i) / (n - 1));
                csv.row({p, flow.coefficient_b(p), flow.height(p), profile.gamma_at(p),
                         profile.big_gamma(p)});
            }
        }
        {
            const double lam = lam0 + std::max(0.5, 0.25 * lam0);
            const double mu_hi = 2.0 * mu_of_lambda(profile, constants, lam, steps_per_layer) + 1.0;
            const int n = 41;
            std::vector<std::vector<double>> rows(n);
            parallel_for(n, [&](std::size_t i) {
                const double mu = mu_hi * static_cast<double>(i) / (n - 1);
                const XiDerivatives d = xi_derivatives(profile, constants, lam, mu, steps_per_layer);
                rows[i] = {mu, d.xi, d.xi_mu, d.xi_lambda};
            });
            CsvWriter csv(out_dir + "/xi_scan.csv", {"mu", "xi", "xi_mu", "xi_lambda"}, hash);
            for (const auto& r : rows)
                csv.row(r);
        }
        {
            const int n = 21;
            const double span = std::max(1.0, 0.5 * lam0);
            std::vector<std::vector<double>> rows(n);
            parallel_for(n, [&](std::size_t i) {
                const double lam = lam0 + span * static_cast<double>(i) / (n - 1);
                rows[i] = {lam, mu_of_lambda(profile, constants, lam, steps_per_layer)};
            });
            CsvWriter csv(out_dir + "/mu_curve.csv", {"lambda", "mu"}, hash);
            for (const auto& r : rows)
                csv.row(r);
        }
        if (profile.layer_count() == 2) {
            const LaminarFlow flow(profile, lam0 + 1.0);
            const auto d = flow.layer_thicknesses();
            MultiplierSymbolInput in;
            in.a_p1 = flow.b_breakpoint(1);
            in.gamma1 = profile.vorticities()[0];
            in.gamma2 = profile.vorticities()[1];
            in.theta1 = d[0];
            in.theta2 = d[1];
            CsvWriter csv(out_dir + "/symbol_decay.csv",
                          {"k", "lambda_k", "k_lambda_k", "k2_diff"}, hash);
            double prev = multiplier_symbol(in, 1);
            for (int k = 1; k <= 200; ++k) {
                const double next = multiplier_symbol(in, k + 1);
                csv.row({static_cast<double>(k), prev, k * prev,
                         static_cast<double>(k) * k * (next - prev)});
                prev = next;
            }
        }
        {
            CsvWriter csv(out_dir + "/validate_report.csv",
                          {"check", "passed", "value", "threshold"}, hash);
            for (const auto& c : suite.report.checks)
                csv.raw_row(c.name + "," + (c.passed ? "1" : "0") + "," +
                            CsvWriter::format(c.value) + "," + CsvWriter::format(c.threshold));
        }
    }
    return suite.report;
}

}  // namespace shearwave
