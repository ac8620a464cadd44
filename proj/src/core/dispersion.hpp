#pragma once

#include <vector>

#include "core/constants.hpp"
#include "core/profile.hpp"

namespace shearwave {

/// Two-layer dispersion data: layer thicknesses and vorticities (layer 1 at
/// the bed, layer 2 at the surface), gravity, surface tension, and the
/// integer wavenumber. The unknown is x = sqrt(lambda) = c - u at the crest.
struct DispersionInput {
    double d1 = 0.0, d2 = 0.0;
    double gamma1 = 0.0, gamma2 = 0.0;
    double g = 9.81;
    double sigma = 0.0;
    int k = 1;

    void validate() const;
};

/// coth with a series branch near zero; overflow-free for large arguments.
double coth(double x);

struct DispersionResidual {
    double cubic = 0.0;  // x^3 + C2 x^2 + C1 x + C0, coefficients from the expanded form
    double dra = 0.0;    // the coth-form relation, denominators cleared and scaled to match
};

/// Evaluates both algebraic routes to the same relation; they agree to
/// rounding for every admissible input, which is a free correctness check.
DispersionResidual dispersion_residual(double x, const DispersionInput& in);

/// Monic cubic coefficients (C2, C1, C0) of the relation in x = sqrt(lambda).
void dispersion_cubic_coefficients(const DispersionInput& in, double* c2, double* c1, double* c0);

/// Positive roots x = sqrt(lambda), ascending; closed-form cubic solve, each
/// root polished by one bracketed bisection pass to 1e-12. May be empty.
std::vector<double> solve_dispersion(const DispersionInput& in);

/// c - u(0) for gamma1 = gamma2 = gamma:
///   -gamma/2 T + sqrt(gamma^2/4 T^2 + (g + sigma k^2) T),  T = tanh(kd)/k.
double special_case_equal_vorticity(double gamma, double d, int k, double g, double sigma);

/// Interface-trace multiplier data: a(p1) = b at the interface, the two layer
/// vorticities, and the positive layer parameters Theta_1, Theta_2.
struct MultiplierSymbolInput {
    double a_p1 = 1.0;
    double gamma1 = 0.0, gamma2 = 0.0;
    double theta1 = 1.0, theta2 = 1.0;

    void validate() const;
};

/// lambda_k = a^2(p1) / (gamma1 - gamma2 + a(p1)[coth(Theta1 k) + coth(Theta2 k)] k)
/// for k >= 1; k = 0 uses the limit coth(Theta x) x -> 1/Theta.
double multiplier_symbol(const MultiplierSymbolInput& in, int k);

struct SymbolDecay {
    double max_k_lambda = 0.0;   // max over 1 <= k <= K of |k lambda_k|
    double max_k2_diff = 0.0;    // max over 1 <= k <= K of |k^2 (lambda_{k+1} - lambda_k)|
};
SymbolDecay symbol_decay_check(const MultiplierSymbolInput& in, int k_max);

/// Cross-validation of the shooting and closed-form routes for a two-layer
/// profile: the Xi(., k^2) zero lambda*, pushed through the laminar layer
/// thicknesses, must annihilate the dispersion relation.
struct DispersionShootingPair {
    bool found = false;
    double lambda_star = 0.0;
    double xi_at_root = 0.0;
    double cubic_residual = 0.0;
    double dra_residual = 0.0;
    double residual_scale = 1.0;   // magnitude sum of the cubic terms at x*
    double nearest_root_rel = 0.0; // relative gap from sqrt(lambda*) to a cubic root
};
DispersionShootingPair dispersion_vs_shooting(const VorticityProfile& profile,
                                              const PhysicalConstants& constants, int k,
                                              int steps_per_layer = 0);

}  // namespace shearwave
