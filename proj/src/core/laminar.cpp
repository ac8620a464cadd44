#include "core/laminar.hpp"

#include <cmath>
#include <string>

namespace shearwave {

LaminarFlow::LaminarFlow(VorticityProfile profile, double lambda)
    : profile_(std::move(profile)), lambda_(lambda) {
    const double bound = 2.0 * profile_.gamma_sup();
    if (!(lambda_ > bound))
        throw DomainError("lambda = " + std::to_string(lambda_) +
                          " must exceed 2*sup Gamma = " + std::to_string(bound));

    const auto& bp = profile_.breakpoints();
    const std::size_t n = profile_.layer_count();
    b_bp_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        b_bp_[i] = std::sqrt(lambda_ - 2.0 * profile_.big_gamma_breakpoint(i));

    height_bp_.assign(n + 1, 0.0);
    inv_b3_bp_.assign(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        const double dp = bp[i] - bp[i - 1];
        const double ba = b_bp_[i - 1], bb = b_bp_[i];
        height_bp_[i] = height_bp_[i - 1] + 2.0 * dp / (ba + bb);
        inv_b3_bp_[i] = inv_b3_bp_[i - 1] + 2.0 * dp / ((ba + bb) * ba * bb);
    }
}

double LaminarFlow::coefficient_b(double p) const {
    return std::sqrt(lambda_ - 2.0 * profile_.big_gamma(p));
}

double LaminarFlow::height(double p) const {
    const std::size_t i = profile_.layer_of(p);
    const double pa = profile_.breakpoints()[i - 1];
    return height_bp_[i - 1] + 2.0 * (p - pa) / (b_bp_[i - 1] + coefficient_b(p));
}

double LaminarFlow::height_second_derivative(double p) const {
    const double b = coefficient_b(p);
    return profile_.gamma_at(p) / (b * b * b);
}

std::vector<double> LaminarFlow::layer_thicknesses() const {
    std::vector<double> out(profile_.layer_count());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = height_bp_[i + 1] - height_bp_[i];
    return out;
}

double LaminarFlow::total_head(double gravity) const {
    if (!(gravity >= 0.0))
        throw InvalidInput("gravity: must be >= 0");
    return lambda_ + 2.0 * gravity * depth();
}

double LaminarFlow::surface_speed() const { return std::sqrt(lambda_); }

double LaminarFlow::inv_b3_integral(double p) const {
    const std::size_t i = profile_.layer_of(p);
    const double pa = profile_.breakpoints()[i - 1];
    const double ba = b_bp_[i - 1], bp_val = coefficient_b(p);
    return inv_b3_bp_[i - 1] + 2.0 * (p - pa) / ((ba + bp_val) * ba * bp_val);
}

double LaminarFlow::p_of_height(double h) const {
    if (!(h >= -1e-12 && h <= depth() + 1e-12))
        throw DomainError("height " + std::to_string(h) + " outside [0, depth]");
    h = std::min(std::max(h, 0.0), depth());
    const auto& bp = profile_.breakpoints();
    std::size_t i = 1;
    while (i < profile_.layer_count() && h > height_bp_[i]) ++i;
    // Within layer i: H(p)-H_{i-1} = (b_{i-1}-b(p))/gamma, so b is linear in H.
    const double gamma = profile_.vorticities()[i - 1];
    const double dh = h - height_bp_[i - 1];
    const double ba = b_bp_[i - 1];
    const double b = ba - gamma * dh;
    // p - p_{i-1} = (b_{i-1}^2 - b^2)/(2 gamma) = dh (b_{i-1} + b)/2.
    const double p = bp[i - 1] + dh * (ba + b) / 2.0;
    return std::min(std::max(p, bp[i - 1]), bp[i]);
}

}  // namespace shearwave
