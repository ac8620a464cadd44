#pragma once

#include <cmath>

namespace shearwave {

/// Value represented as mantissa * exp(log_scale). The shooting integrator
/// renormalizes its state when solutions grow past double range (large mu),
/// so Xi values keep a usable sign and magnitude even when exp() of the true
/// value would overflow.
struct ScaledValue {
    double mantissa = 0.0;
    double log_scale = 0.0;

    double value() const { return mantissa * std::exp(log_scale); }
    int sign() const { return (mantissa > 0.0) - (mantissa < 0.0); }

    /// ln |value|; -inf for zero.
    double log_abs() const { return std::log(std::fabs(mantissa)) + log_scale; }

    /// True-value ordering, overflow-safe.
    bool less_than(const ScaledValue& o) const {
        const int sa = sign(), sb = o.sign();
        if (sa != sb) return sa < sb;
        if (sa == 0) return false;
        return sa > 0 ? log_abs() < o.log_abs() : log_abs() > o.log_abs();
    }
};

}  // namespace shearwave
