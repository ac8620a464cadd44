#pragma once

#include <utility>
#include <vector>

namespace shearwave {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

}  // namespace shearwave
