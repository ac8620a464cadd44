#pragma once

#include <vector>

#include "core/constants.hpp"
#include "core/profile.hpp"

namespace shearwave {

/// Laminar (parallel-streamline) flow for a profile at squared surface speed
/// lambda > 2*sup Gamma. All integrals of powers of b over a layer have exact
/// closed forms; they are evaluated in rationalized form, e.g.
///   int 1/b  over [a,p] = 2(p-a) / (b(a)+b(p)),
/// which is identical to (b(a)-b(p))/gamma for gamma != 0 and regular at
/// gamma = 0, so no small-vorticity branch is needed.
class LaminarFlow {
  public:
    LaminarFlow(VorticityProfile profile, double lambda);

    const VorticityProfile& profile() const { return profile_; }
    double lambda() const { return lambda_; }

    /// b(p) = sqrt(lambda - 2 Gamma(p)); strictly positive, continuous.
    double coefficient_b(double p) const;

    /// H(p) = int_{p0}^p 1/b; strictly increasing, H(p0) = 0.
    double height(double p) const;

    /// H'(p) = 1/b(p).
    double height_derivative(double p) const { return 1.0 / coefficient_b(p); }

    /// H''(p) = gamma(p)/b(p)^3 inside layers.
    double height_second_derivative(double p) const;

    double depth() const { return height_bp_.back(); }
    std::vector<double> layer_thicknesses() const;

    /// Q(lambda) = lambda + 2 g d(lambda).
    double total_head(double gravity) const;

    double surface_speed() const;

    /// int_{p0}^p 1/b^3, exact per layer.
    double inv_b3_integral(double p) const;
    double inv_b3_integral() const { return inv_b3_bp_.back(); }

    /// Inverse of the height map: the unique p in [p0,0] with H(p) = h.
    double p_of_height(double h) const;

    /// b at breakpoint i (0-based).
    double b_breakpoint(std::size_t i) const { return b_bp_[i]; }

  private:
    VorticityProfile profile_;
    double lambda_;
    std::vector<double> b_bp_;       // b at breakpoints
    std::vector<double> height_bp_;  // H at breakpoints
    std::vector<double> inv_b3_bp_;  // int 1/b^3 from p0 to each breakpoint
};

}  // namespace shearwave
