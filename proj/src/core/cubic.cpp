#include "core/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shearwave {

std::vector<double> solve_cubic_real(double a, double b, double c) {
    // Depressed form t^3 - 3q t + 2r with x = t - a/3.
    const double a2 = a * a;
    const double q = (a2 - 3.0 * b) / 9.0;
    const double r = (a * (2.0 * a2 - 9.0 * b) + 27.0 * c) / 54.0;
    const double r2 = r * r;
    const double q3 = q * q * q;

    std::vector<double> roots;
    if (r2 < q3) {
        // Three real roots.
        double t = r / std::sqrt(q3);
        t = std::clamp(t, -1.0, 1.0);
        t = std::acos(t);
        const double s = -2.0 * std::sqrt(q);
        const double shift = a / 3.0;
        roots = {s * std::cos(t / 3.0) - shift,
                 s * std::cos((t + 2.0 * std::numbers::pi) / 3.0) - shift,
                 s * std::cos((t - 2.0 * std::numbers::pi) / 3.0) - shift};
    } else {
        const double u3 = -r - std::copysign(std::sqrt(r2 - q3), r);
        const double u = std::cbrt(u3);
        const double v = (u == 0.0) ? 0.0 : q / u;
        roots = {u + v - a / 3.0};
        // The conjugate pair collapses to a real double root when it is real.
        const double imag = 0.5 * std::sqrt(3.0) * (u - v);
        if (std::fabs(imag) < 1e-14 * std::max(1.0, std::fabs(u) + std::fabs(v)))
            roots.push_back(-0.5 * (u + v) - a / 3.0);
    }

    std::sort(roots.begin(), roots.end());
    // Merge near-coincident roots.
    std::vector<double> out;
    for (double x : roots) {
        if (out.empty() || std::fabs(x - out.back()) >
                               1e-12 * std::max({1.0, std::fabs(x), std::fabs(out.back())}))
            out.push_back(x);
    }
    return out;
}

}  // namespace shearwave
