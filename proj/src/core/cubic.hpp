#pragma once

#include <vector>

namespace shearwave {

/// All real roots of x^3 + a x^2 + b x + c = 0, ascending, with multiple
/// roots reported once. Trigonometric form in the three-real-root regime,
/// Cardano otherwise.
std::vector<double> solve_cubic_real(double a, double b, double c);

}  // namespace shearwave
