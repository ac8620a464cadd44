#pragma once

#include <cstddef>
#include <vector>

#include "core/constants.hpp"
#include "core/laminar.hpp"
#include "core/profile.hpp"
#include "core/scaled.hpp"

namespace shearwave {

inline constexpr int kDefaultStepsPerLayer = 2000;

/// Trajectory of the shooting system z' = w/b^3, w' = mu b z, integrated
/// layer by layer (breakpoints are forced nodes; coefficients are smooth
/// within layers). Samples are stored in ascending p for both shots and share
/// a common scale: true values are the stored ones times exp(log_scale).
struct ShootingResult {
    double lambda = 0.0;
    double mu = 0.0;
    std::vector<double> p;
    std::vector<double> z, w;                      // w = b^3 z'
    std::vector<double> z_mu, w_mu;                // variational states, when requested
    std::vector<double> z_lambda, w_lambda;
    double log_scale = 0.0;
    std::vector<std::size_t> layer_first;          // node index of each breakpoint

    double xi = 0.0;                               // left shot only; true value (may overflow)
};

/// Left shot: z(p0) = 0, z'(p0) = 1. With `variational`, the mu- and
/// lambda-derivative systems are integrated jointly in one augmented state.
ShootingResult shoot_left(const VorticityProfile& profile, const PhysicalConstants& constants,
                          double lambda, double mu, int steps_per_layer = kDefaultStepsPerLayer,
                          bool variational = false);

/// Right shot: v(0) = lambda^{3/2}, v'(0) = g + sigma mu, integrated down to p0.
ShootingResult shoot_right(const VorticityProfile& profile, const PhysicalConstants& constants,
                           double lambda, double mu, int steps_per_layer = kDefaultStepsPerLayer);

/// Xi(lambda, mu) = lambda^{3/2} z'(0) - (g + sigma mu) z(0), in scaled form.
ScaledValue xi_scaled(const VorticityProfile& profile, const PhysicalConstants& constants,
                      double lambda, double mu, int steps_per_layer = kDefaultStepsPerLayer);

double xi(const VorticityProfile& profile, const PhysicalConstants& constants, double lambda,
          double mu, int steps_per_layer = kDefaultStepsPerLayer);

struct XiPair {
    double xi;        // left shot
    double xi_cross;  // b^3(p0) v(p0) / lambda^{3/2} from the right shot; equals xi
                      // by constancy of b^3 (v z' - z v') along p
};
XiPair xi_with_cross_check(const VorticityProfile& profile, const PhysicalConstants& constants,
                           double lambda, double mu, int steps_per_layer = kDefaultStepsPerLayer);

struct XiDerivatives {
    double xi = 0.0;
    double xi_mu = 0.0;                  // from the mu-variational system
    double xi_lambda = 0.0;              // from the lambda-variational system
    double xi_lambda_integral = 0.0;     // quadrature channel; valid when z(0) != 0
    bool integral_available = false;
};

/// Both partial derivatives of Xi. The integral channel evaluates
/// [int(3b/2 z'^2 + mu/(2b) z^2) dp + z_lambda(0) Xi] / z(0), which reduces to
/// the pure quadrature identity on the zero set of Xi.
XiDerivatives xi_derivatives(const VorticityProfile& profile, const PhysicalConstants& constants,
                             double lambda, double mu,
                             int steps_per_layer = kDefaultStepsPerLayer);

/// The unique lambda0 with 1/g = int_{p0}^0 b^{-3}; bracketed by doubling and
/// bisected to abs tolerance 1e-10 * max(1, lambda0). Uses the exact per-layer
/// closed form of the integral.
double lambda0(const VorticityProfile& profile, const PhysicalConstants& constants);

struct ConditionD2 {
    double lhs = 0.0;  // int b (int_{p0}^p b^{-3})^2 dp at lambda0
    double rhs = 0.0;  // sigma / g^2
    bool holds = false;
};

/// Xi_mu(lambda0, 0) <= 0 test. The outer integral is composite
/// Gauss-Legendre per layer, refined until the relative change is < 1e-10.
ConditionD2 check_condition_d2(const VorticityProfile& profile, const PhysicalConstants& constants);

/// The zero curve mu(lambda) of Xi(lambda, .), defined for lambda >= lambda0:
/// Xi > 0 on [0, mu(lambda)), Xi < 0 beyond. Bracketed by doubling (guaranteed
/// to terminate since Xi -> -inf), bisected to 1e-10 * max(1, mu), then the
/// sign structure is verified on 16 probes each side.
double mu_of_lambda(const VorticityProfile& profile, const PhysicalConstants& constants,
                    double lambda, int steps_per_layer = kDefaultStepsPerLayer);

/// Smallest positive n with n^2 >= mu0 (n^2 == mu0 admitted).
int period_divisor_for(double mu0);

/// period_divisor_for(mu(lambda0)); returns 1 whenever condition (d2) holds.
int min_period_divisor(const VorticityProfile& profile, const PhysicalConstants& constants,
                       int steps_per_layer = kDefaultStepsPerLayer);

struct BifurcationPoint {
    int mode_index = 0;      // k
    int period_divisor = 1;  // n
    int wavenumber = 0;      // k n
    double lambda_k = 0.0;
    bool at_lower_bound = false;  // lambda_k == lambda0; reported, not certified
    std::vector<double> p;        // eigenfunction nodes on [p0, 0]
    std::vector<double> v;        // sup-normalized, positive at the max-magnitude node
    std::vector<double> v_p;      // derivative samples at the same nodes
};

/// lambda_k with mu(lambda_k) = (kn)^2, found by monotone bisection on
/// [lambda0, hi] (upper bracket doubled from lambda0 + 1; the sign of
/// mu(lambda) - (kn)^2 equals the sign of Xi(lambda, (kn)^2) there).
BifurcationPoint bifurcation_point(const VorticityProfile& profile,
                                   const PhysicalConstants& constants, int k, int n,
                                   int steps_per_layer = kDefaultStepsPerLayer);

/// Zero of Xi(., mu) over the whole admissible range (2 sup Gamma, inf), not
/// just [lambda0, inf): scans for a sign change and bisects the first bracket.
/// Returns false if no sign change is found up to lambda_hi.
bool find_xi_zero(const VorticityProfile& profile, const PhysicalConstants& constants, double mu,
                  double* lambda_out, int steps_per_layer = kDefaultStepsPerLayer,
                  double lambda_hi = 0.0 /* 0 = automatic */);

/// Closed-form solution of (b^3 z')' - mu b z = 0 on a constant-vorticity
/// layer with gamma != 0 and mu > 0, fitted to data z(pa), z'(pa). Serves as
/// an independent oracle for the shooting integrator.
class AnalyticLayerSolution {
  public:
    AnalyticLayerSolution(double gamma, double lambda, double mu, double pa, double pb,
                          double big_gamma_at_pa, double z_a, double zp_a);

    double z(double p) const;
    double z_p(double p) const;
    double z_pp(double p) const;

    double beta() const { return beta_; }
    double delta() const { return delta_; }
    double b(double p) const;

  private:
    double mode(double p, int s) const;     // (2 gamma / b) exp(s m (b - b_ref)/gamma)
    double mode_p(double p, int s) const;
    double mode_pp(double p, int s) const;

    double gamma_, lambda_, mu_, pa_, pb_, gamma_a_;  // Gamma(pa)
    double m_, b_ref_;
    double beta_ = 0.0, delta_ = 0.0;
};

/// Sup-norm of the Picard-form defect
///   z(p) - int b^3(p0)/b^3 - mu int 1/b^3 int b z
/// over the trajectory nodes, relative to max |z|. Independent integral-form
/// check of the integrator.
double integral_relation_residual(const ShootingResult& left, const VorticityProfile& profile);

/// Max over nodes of |W(p) - W(p0)| / max(1, |W(p0)|) where
/// W = b^3 (v z' - z v') for the two shots at equal (lambda, mu).
double wronskian_drift(const ShootingResult& left, const ShootingResult& right,
                       const VorticityProfile& profile);

}  // namespace shearwave
