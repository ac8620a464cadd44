#include "core/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace shearwave {

namespace {

double bump(double t) {
    const double s = 1.0 - t * t;
    return (std::fabs(t) < 1.0) ? s * s : 0.0;
}

double bump_derivative(double t) {
    return (std::fabs(t) < 1.0) ? -4.0 * t * (1.0 - t * t) : 0.0;
}

}  // namespace

WaveField::WaveField(VorticityProfile profile, PhysicalConstants constants, double lambda,
                     double amplitude, int wavenumber, std::vector<double> vp,
                     std::vector<double> vv, std::vector<double> vd, int nq, int np_per_layer)
    : profile_(std::move(profile)),
      constants_(std::move(constants)),
      flow_(profile_, lambda),
      amplitude_(amplitude),
      wavenumber_(wavenumber),
      ev_p_(std::move(vp)),
      ev_v_(std::move(vv)),
      ev_vp_(std::move(vd)),
      nq_(nq) {
    if (nq_ < 8)
        throw InvalidInput("nq: need at least 8 q-samples");
    if (np_per_layer < 4)
        throw InvalidInput("np: need at least 4 p-samples per layer");
    if (wavenumber_ < 1)
        throw InvalidInput("wavenumber: must be >= 1");

    if (!ev_p_.empty()) {
        // Shooting nodes are uniform per layer; locate the breakpoint indices.
        const auto& bp = profile_.breakpoints();
        ev_layer_first_.assign(bp.size(), 0);
        std::size_t j = 0;
        for (std::size_t li = 0; li < bp.size(); ++li) {
            while (j + 1 < ev_p_.size() && ev_p_[j] < bp[li] - 1e-14)
                ++j;
            ev_layer_first_[li] = j;
        }
        ev_layer_first_.back() = ev_p_.size() - 1;
    }

    const double per = period();
    q_.resize(nq_);
    for (int i = 0; i < nq_; ++i)
        q_[i] = per * i / nq_;

    const auto& bp = profile_.breakpoints();
    bp_rows_.assign(bp.size(), 0);
    p_.clear();
    p_.reserve(profile_.layer_count() * np_per_layer + 1);
    p_.push_back(bp.front());
    for (std::size_t li = 0; li + 1 < bp.size(); ++li) {
        for (int j = 1; j <= np_per_layer; ++j)
            p_.push_back(bp[li] + (bp[li + 1] - bp[li]) * j / np_per_layer);
        p_.back() = bp[li + 1];
        bp_rows_[li + 1] = p_.size() - 1;
    }
    assemble();
}

WaveField WaveField::laminar(VorticityProfile profile, PhysicalConstants constants, double lambda,
                             int nq, int np_per_layer) {
    return WaveField(std::move(profile), std::move(constants), lambda, 0.0, 1, {}, {}, {}, nq,
                     np_per_layer);
}

double safe_amplitude_cap(const LaminarFlow& flow, const BifurcationPoint& bif) {
    double min_hprime = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= flow.profile().layer_count(); ++i)
        min_hprime = std::min(min_hprime, 1.0 / flow.b_breakpoint(i));
    double max_vp = 0.0;
    for (double d : bif.v_p)
        max_vp = std::max(max_vp, std::fabs(d));
    if (max_vp == 0.0)
        return std::numeric_limits<double>::infinity();
    // min h_p >= min H' - |s| max |v'|; cap at half the bound.
    return 0.5 * min_hprime / max_vp;
}

WaveField WaveField::first_order(VorticityProfile profile, PhysicalConstants constants,
                                 const BifurcationPoint& bif, double amplitude, int nq,
                                 int np_per_layer, bool enforce_amplitude_cap) {
    const LaminarFlow flow(profile, bif.lambda_k);
    const double cap = safe_amplitude_cap(flow, bif);
    if (enforce_amplitude_cap && std::fabs(amplitude) > cap)
        throw AmplitudeError("amplitude " + std::to_string(amplitude) +
                             " exceeds the safe bound " + std::to_string(cap));
    return WaveField(std::move(profile), std::move(constants), bif.lambda_k, amplitude,
                     bif.wavenumber, bif.p, bif.v, bif.v_p, nq, np_per_layer);
}

double WaveField::period() const { return 2.0 * std::numbers::pi / wavenumber_; }

void WaveField::assemble() {
    // kn q_c = 2 pi c / nq exactly; mirrored fill makes the grid symmetric
    // about the crest column to the last bit.
    std::vector<double> cosine(nq_);
    for (int c = 0; c <= nq_ / 2; ++c) {
        cosine[c] = std::cos(2.0 * std::numbers::pi * c / nq_);
        if (c != 0)
            cosine[nq_ - c] = cosine[c];
    }
    h_.resize(p_.size() * static_cast<std::size_t>(nq_));
    parallel_for(p_.size(), [&](std::size_t r) {
        const double base = flow_.height(p_[r]);
        const double vs = amplitude_ == 0.0 ? 0.0 : amplitude_ * eigenfunction(p_[r]);
        for (int c = 0; c < nq_; ++c)
            h_[r * nq_ + c] = base + vs * cosine[c];
    });
}

double WaveField::eigenfunction(double p) const {
    if (ev_p_.empty())
        return 0.0;
    const std::size_t li = profile_.layer_of(p);
    const std::size_t a = ev_layer_first_[li - 1], b = ev_layer_first_[li];
    const double ha = ev_p_[a];
    const double step = (ev_p_[b] - ha) / static_cast<double>(b - a);
    std::size_t i = a + std::min<std::size_t>(
                            b - a - 1, static_cast<std::size_t>(std::max(0.0, (p - ha) / step)));
    const double dp = ev_p_[i + 1] - ev_p_[i];
    const double t = (p - ev_p_[i]) / dp;
    const double t2 = t * t, t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * ev_v_[i] + (t3 - 2.0 * t2 + t) * dp * ev_vp_[i] +
           (-2.0 * t3 + 3.0 * t2) * ev_v_[i + 1] + (t3 - t2) * dp * ev_vp_[i + 1];
}

double WaveField::eigenfunction_derivative(double p) const {
    if (ev_p_.empty())
        return 0.0;
    const std::size_t li = profile_.layer_of(p);
    const std::size_t a = ev_layer_first_[li - 1], b = ev_layer_first_[li];
    const double ha = ev_p_[a];
    const double step = (ev_p_[b] - ha) / static_cast<double>(b - a);
    std::size_t i = a + std::min<std::size_t>(
                            b - a - 1, static_cast<std::size_t>(std::max(0.0, (p - ha) / step)));
    const double dp = ev_p_[i + 1] - ev_p_[i];
    const double t = (p - ev_p_[i]) / dp;
    const double t2 = t * t;
    return (6.0 * t2 - 6.0 * t) * (ev_v_[i] - ev_v_[i + 1]) / dp +
           (3.0 * t2 - 4.0 * t + 1.0) * ev_vp_[i] + (3.0 * t2 - 2.0 * t) * ev_vp_[i + 1];
}

double WaveField::h(double q, double p) const {
    return flow_.height(p) + amplitude_ * eigenfunction(p) * std::cos(wavenumber_ * q);
}

double WaveField::h_p(double q, double p) const {
    return flow_.height_derivative(p) +
           amplitude_ * eigenfunction_derivative(p) * std::cos(wavenumber_ * q);
}

double WaveField::h_q(double q, double p) const {
    return -amplitude_ * eigenfunction(p) * wavenumber_ * std::sin(wavenumber_ * q);
}

double WaveField::eta(double q) const {
    return amplitude_ * (ev_p_.empty() ? 0.0 : ev_v_.back()) * std::cos(wavenumber_ * q);
}

double WaveField::eta_q(double q) const {
    return -amplitude_ * (ev_p_.empty() ? 0.0 : ev_v_.back()) * wavenumber_ *
           std::sin(wavenumber_ * q);
}

double WaveField::eta_qq(double q) const {
    return -amplitude_ * (ev_p_.empty() ? 0.0 : ev_v_.back()) * wavenumber_ * wavenumber_ *
           std::cos(wavenumber_ * q);
}

PbcCheck check_pbc(const WaveField& field) {
    const auto& p = field.p_grid();
    const auto& rows = field.breakpoint_rows();
    const int nq = field.nq();
    double min_hp = std::numeric_limits<double>::infinity();
    for (std::size_t li = 0; li + 1 < rows.size(); ++li) {
        const std::size_t a = rows[li], b = rows[li + 1];
        const double dp = (p[b] - p[a]) / static_cast<double>(b - a);
        for (std::size_t r = a; r <= b; ++r) {
            for (int c = 0; c < nq; ++c) {
                double hp;
                if (r == a)
                    hp = (-3.0 * field.h_grid(r, c) + 4.0 * field.h_grid(r + 1, c) -
                          field.h_grid(r + 2, c)) /
                         (2.0 * dp);
                else if (r == b)
                    hp = (3.0 * field.h_grid(r, c) - 4.0 * field.h_grid(r - 1, c) +
                          field.h_grid(r - 2, c)) /
                         (2.0 * dp);
                else
                    hp = (field.h_grid(r + 1, c) - field.h_grid(r - 1, c)) / (2.0 * dp);
                min_hp = std::min(min_hp, hp);
            }
        }
    }
    return PbcCheck{min_hp, min_hp > 0.0};
}

namespace {

// Residual evaluation on a subsampled view (stride in rows within each layer,
// stride in columns); stride 1 is the full grid.
void pb_residual_pass(const WaveField& field, double total_head, int stride,
                      std::vector<double>* interior, double* surface, double* bottom) {
    const auto& p = field.p_grid();
    const auto& rows = field.breakpoint_rows();
    const auto& gammas = field.profile().vorticities();
    const int nq = field.nq();
    const int ncols = nq / stride;
    const double dq = field.period() / nq * stride;
    const double g = field.constants().gravity;
    const double sigma = field.constants().surface_tension;

    interior->assign(rows.size() - 1, 0.0);
    auto col = [&](int j) { return ((j % ncols) + ncols) % ncols * stride; };

    for (std::size_t li = 0; li + 1 < rows.size(); ++li) {
        const std::size_t a = rows[li], b = rows[li + 1];
        const std::size_t nr = (b - a) / stride;
        const double dp = (p[b] - p[a]) / static_cast<double>(nr);
        double worst = 0.0;
        for (std::size_t i = 1; i < nr; ++i) {
            const std::size_t r = a + i * stride;
            const std::size_t rm = r - stride, rp = r + stride;
            for (int j = 0; j < ncols; ++j) {
                const int c = col(j), cm = col(j - 1), cp = col(j + 1);
                const double hc = field.h_grid(r, c);
                const double hp = (field.h_grid(rp, c) - field.h_grid(rm, c)) / (2.0 * dp);
                const double hpp =
                    (field.h_grid(rp, c) - 2.0 * hc + field.h_grid(rm, c)) / (dp * dp);
                const double hq = (field.h_grid(r, cp) - field.h_grid(r, cm)) / (2.0 * dq);
                const double hqq =
                    (field.h_grid(r, cp) - 2.0 * hc + field.h_grid(r, cm)) / (dq * dq);
                const double hpq = (field.h_grid(rp, cp) - field.h_grid(rp, cm) -
                                    field.h_grid(rm, cp) + field.h_grid(rm, cm)) /
                                   (4.0 * dp * dq);
                const double res = (1.0 + hq * hq) * hpp - 2.0 * hp * hq * hpq + hp * hp * hqq -
                                   gammas[li] * hp * hp * hp;
                worst = std::max(worst, std::fabs(res));
            }
        }
        (*interior)[li] = worst;
    }

    // Surface row: one-sided h_p of second order.
    {
        const std::size_t b = rows.back(), a = rows[rows.size() - 2];
        const std::size_t nr = (b - a) / stride;
        const double dp = (p[b] - p[a]) / static_cast<double>(nr);
        double worst = 0.0;
        for (int j = 0; j < ncols; ++j) {
            const int c = col(j), cm = col(j - 1), cp = col(j + 1);
            const double hc = field.h_grid(b, c);
            const double hp = (3.0 * hc - 4.0 * field.h_grid(b - stride, c) +
                               field.h_grid(b - 2 * stride, c)) /
                              (2.0 * dp);
            const double hq = (field.h_grid(b, cp) - field.h_grid(b, cm)) / (2.0 * dq);
            const double hqq = (field.h_grid(b, cp) - 2.0 * hc + field.h_grid(b, cm)) / (dq * dq);
            const double res = 1.0 + hq * hq + (2.0 * g * hc - total_head) * hp * hp -
                               2.0 * sigma * hp * hp * hqq / std::pow(1.0 + hq * hq, 1.5);
            worst = std::max(worst, std::fabs(res));
        }
        *surface = worst;
    }

    double wb = 0.0;
    for (int j = 0; j < ncols; ++j)
        wb = std::max(wb, std::fabs(field.h_grid(0, col(j))));
    *bottom = wb;
}

}  // namespace

PbResidual pb_residual(const WaveField& field, double total_head) {
    PbResidual out;
    pb_residual_pass(field, total_head, 1, &out.interior, &out.surface, &out.bottom);

    // Step-halving report when the grid admits a stride-2 pass.
    const auto& rows = field.breakpoint_rows();
    bool can_halve = field.nq() % 2 == 0;
    for (std::size_t li = 0; li + 1 < rows.size(); ++li)
        can_halve = can_halve && ((rows[li + 1] - rows[li]) % 2 == 0) &&
                    (rows[li + 1] - rows[li]) >= 8;
    if (can_halve) {
        double dummy_bottom = 0.0;
        pb_residual_pass(field, total_head, 2, &out.interior_coarse, &out.surface_coarse,
                         &dummy_bottom);
    }
    return out;
}

namespace {

// Snaps a single-layer bump onto the grid: center on a grid line, halfwidth a
// whole number of cells. Midpoint sums of phi_p are then odd about the center
// and cancel exactly, so a laminar flow (constant conormal flux) contributes
// nothing at all, not just O(dp^2).
TestBump snapped_bump(const WaveField& field, std::size_t layer, double center, double width) {
    const auto& bp = field.profile().breakpoints();
    const auto& rows = field.breakpoint_rows();
    const double lo = bp[layer - 1], hi = bp[layer];
    const long cells = static_cast<long>(rows[layer] - rows[layer - 1]);
    const double dp = (hi - lo) / static_cast<double>(cells);
    long w_cells = std::max<long>(2, static_cast<long>(width / dp));
    w_cells = std::min(w_cells, (cells - 2) / 2 > 0 ? (cells - 2) / 2 : 1);
    long c_cell = static_cast<long>(std::llround((center - lo) / dp));
    c_cell = std::max(w_cells + (layer == 1 ? 0 : 1),
                      std::min(cells - w_cells - (layer + 1 == bp.size() ? 0 : 1), c_cell));
    // Keep the support strictly inside (p0, 0).
    if (layer == 1 && c_cell == w_cells)
        ++c_cell;
    if (layer + 1 == bp.size() && c_cell == cells - w_cells)
        --c_cell;
    TestBump out;
    out.p_center = lo + c_cell * dp;
    out.p_halfwidth = w_cells * dp;
    return out;
}

}  // namespace

std::vector<TestBump> default_bumps(const WaveField& field) {
    const auto& bp = field.profile().breakpoints();
    const double per = field.period();
    const double p0 = bp.front();
    std::vector<TestBump> bumps;

    TestBump mid = snapped_bump(field, field.profile().layer_of(0.5 * p0), 0.5 * p0,
                                0.35 * std::fabs(p0));
    mid.q_center = 0.5 * per;
    mid.q_halfwidth = 0.3 * per;
    bumps.push_back(mid);

    // One bump straddling each vorticity jump; exact cancellation holds when
    // the adjacent layer grids mirror, otherwise these sit on the O(dp^2)
    // midpoint floor.
    for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
        const double room = std::min(bp[i] - bp.front(), 0.0 - bp[i]);
        const double gap = std::min({bp[i] - bp[i - 1], bp[i + 1] - bp[i], room});
        bumps.push_back({per / 3.0, 0.25 * per, bp[i], 0.8 * gap});
    }

    const std::size_t top = field.profile().layer_count();
    const double top_w = (0.0 - bp[top - 1]) * 0.45;
    TestBump near_surface = snapped_bump(field, top, -top_w * 1.05, top_w);
    near_surface.q_center = 0.7 * per;
    near_surface.q_halfwidth = 0.2 * per;
    bumps.push_back(near_surface);
    return bumps;
}

std::vector<double> weak_residual(const WaveField& field, const std::vector<TestBump>& bumps) {
    const auto& p = field.p_grid();
    const auto& rows = field.breakpoint_rows();
    const int nq = field.nq();
    const double per = field.period();
    const double dq = per / nq;
    const auto& profile = field.profile();

    std::vector<double> out;
    out.reserve(bumps.size());
    for (const TestBump& bu : bumps) {
        double acc = 0.0;
        for (std::size_t li = 0; li + 1 < rows.size(); ++li) {
            const std::size_t a = rows[li], b = rows[li + 1];
            const double dp = (p[b] - p[a]) / static_cast<double>(b - a);
            for (std::size_t r = a; r < b; ++r) {
                const double pc = 0.5 * (p[r] + p[r + 1]);
                const double tp = (pc - bu.p_center) / bu.p_halfwidth;
                if (std::fabs(tp) >= 1.0)
                    continue;
                const double Y = bump(tp);
                const double Yp = bump_derivative(tp) / bu.p_halfwidth;
                const double gam = profile.big_gamma(pc);
                for (int c = 0; c < nq; ++c) {
                    const double qc = (c + 0.5) * dq;
                    double dqc = qc - bu.q_center;
                    dqc -= per * std::round(dqc / per);  // periodic distance
                    const double tq = dqc / bu.q_halfwidth;
                    if (std::fabs(tq) >= 1.0)
                        continue;
                    const double X = bump(tq);
                    const double Xq = bump_derivative(tq) / bu.q_halfwidth;
                    const double hp = field.h_p(qc, pc);
                    const double hq = field.h_q(qc, pc);
                    const double flux_p = gam + (1.0 + hq * hq) / (2.0 * hp * hp);
                    acc += (hq / hp * Xq * Y - flux_p * X * Yp) * dq * dp;
                }
            }
        }
        out.push_back(acc);
    }
    return out;
}

namespace {

// h_p with p clamped to [p0, 0]; the stream integration may poke marginally
// past the bed or the surface at interior Runge-Kutta stages.
double h_p_clamped(const WaveField& field, double q, double p) {
    const double p0 = field.profile().p0();
    return field.h_p(q, std::min(0.0, std::max(p0, p)));
}

void check_pbc_for_stream(const WaveField& field) {
    // Normally guaranteed by the construction cap; fields built with the cap
    // disabled are refused here since 1/h_p blows up along the ray.
    const PbcCheck pbc = check_pbc(field);
    if (!pbc.ok)
        throw AmplitudeError("stream function refused: min h_p = " +
                             std::to_string(pbc.min_h_p) + " is not positive");
}

double rk4_psi_span(const WaveField& field, double x, double y_from, double y_to,
                    double psi_start, int steps) {
    double psi = psi_start;
    const double h = (y_to - y_from) / steps;
    for (int i = 0; i < steps; ++i) {
        const double k1 = -1.0 / h_p_clamped(field, x, -psi);
        const double k2 = -1.0 / h_p_clamped(field, x, -(psi + 0.5 * h * k1));
        const double k3 = -1.0 / h_p_clamped(field, x, -(psi + 0.5 * h * k2));
        const double k4 = -1.0 / h_p_clamped(field, x, -(psi + h * k3));
        psi += h / 6.0 * (k1 + 2.0 * (k2 + k3) + k4);
    }
    return psi;
}

// Advances psi from y_from to y_to, splitting the span at the interface
// streamlines y = h(x, p_i) - d so the Runge-Kutta steps never cross a
// vorticity jump (h_p has a kink there).
double psi_advance(const WaveField& field, double x, double y_from, double y_to,
                   double psi_start, int steps_hint) {
    const auto& bp = field.profile().breakpoints();
    const double d = field.flow().depth();
    const double lo = std::min(y_from, y_to), hi = std::max(y_from, y_to);
    std::vector<double> cuts;
    for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
        const double yc = field.h(x, bp[i]) - d;
        if (yc > lo + 1e-14 && yc < hi - 1e-14)
            cuts.push_back(yc);
    }
    std::sort(cuts.begin(), cuts.end());
    if (y_to < y_from)
        std::reverse(cuts.begin(), cuts.end());
    cuts.push_back(y_to);

    const double total = std::fabs(y_to - y_from);
    double psi = psi_start;
    double y = y_from;
    for (double target : cuts) {
        const double frac = total > 0.0 ? std::fabs(target - y) / total : 1.0;
        const int steps = std::max(8, static_cast<int>(std::ceil(steps_hint * frac)));
        psi = rk4_psi_span(field, x, y, target, psi, steps);
        y = target;
    }
    return psi;
}

}  // namespace

StreamSample stream_function(const WaveField& field, double x, int samples, int steps) {
    check_pbc_for_stream(field);
    if (samples < 2 || steps < samples)
        throw InvalidInput("stream_function: need steps >= samples >= 2");
    StreamSample out;
    out.x = x;
    const double y_top = field.eta(x);
    const double y_bed = -field.flow().depth();
    const int per_cell = std::max(1, steps / (samples - 1));
    out.y.resize(samples);
    out.psi.resize(samples);
    out.y[0] = y_top;
    out.psi[0] = 0.0;
    for (int i = 1; i < samples; ++i) {
        out.y[i] = y_top + (y_bed - y_top) * i / (samples - 1);
        out.psi[i] = psi_advance(field, x, out.y[i - 1], out.y[i], out.psi[i - 1], per_cell);
    }
    return out;
}

double stream_function_value(const WaveField& field, double x, double y, int steps) {
    check_pbc_for_stream(field);
    const double y_top = field.eta(x);
    return psi_advance(field, x, y_top, y, 0.0, steps);
}

PhysicalRay physical_fields(const WaveField& field, double x, int samples, double dx, int steps) {
    check_pbc_for_stream(field);
    if (samples < 2)
        throw InvalidInput("physical_fields: need samples >= 2");

    const double y_top = field.eta(x);
    const double y_bed = -field.flow().depth();

    PhysicalRay out;
    out.x = x;
    out.y.resize(samples);
    for (int i = 0; i < samples; ++i)
        out.y[i] = y_top + (y_bed - y_top) * i / (samples - 1);

    // Three rays on the common y-grid. Neighbor rays start from their own
    // surface; the short hop from eta(x +- dx) to y_top uses the same ODE.
    const auto ray_psi = [&](double xr) {
        std::vector<double> psi(samples);
        const double eta_r = field.eta(xr);
        double cur = (eta_r == y_top) ? 0.0 : psi_advance(field, xr, eta_r, y_top, 0.0, 64);
        psi[0] = cur;
        const int per_cell = std::max(1, steps / (samples - 1));
        for (int i = 1; i < samples; ++i) {
            cur = psi_advance(field, xr, out.y[i - 1], out.y[i], cur, per_cell);
            psi[i] = cur;
        }
        return psi;
    };

    out.psi = ray_psi(x);
    const std::vector<double> psi_minus = ray_psi(x - dx);
    const std::vector<double> psi_plus = ray_psi(x + dx);

    out.u_minus_c.resize(samples);
    out.v.resize(samples);
    out.pressure.resize(samples);

    // Bernoulli constant from the crest surface point (q = 0), atmospheric
    // pressure 0: P = -sigma eta'' / (1+eta'^2)^{3/2} there.
    const double sigma = field.constants().surface_tension;
    const double g = field.constants().gravity;
    const double uc_crest = -1.0 / field.h_p(0.0, 0.0);
    const double p_crest = -sigma * field.eta_qq(0.0) /
                           std::pow(1.0 + field.eta_q(0.0) * field.eta_q(0.0), 1.5);
    const double bernoulli =
        p_crest + 0.5 * uc_crest * uc_crest + g * field.eta(0.0);

    const double p0 = field.profile().p0();
    for (int i = 0; i < samples; ++i) {
        const double pc = std::min(0.0, std::max(p0, -out.psi[i]));
        out.u_minus_c[i] = -1.0 / field.h_p(x, pc);
        if (i == 0) {
            // Surface kinematic relation: v = (u - c) eta'.
            out.v[i] = out.u_minus_c[i] * field.eta_q(x);
        } else {
            out.v[i] = -(psi_plus[i] - psi_minus[i]) / (2.0 * dx);
        }
        out.pressure[i] = bernoulli - 0.5 * (out.u_minus_c[i] * out.u_minus_c[i] +
                                             out.v[i] * out.v[i]) -
                          g * out.y[i] - field.profile().big_gamma(pc);
    }
    return out;
}

}  // namespace shearwave
