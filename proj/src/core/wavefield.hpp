#pragma once

#include <cstddef>
#include <vector>

#include "core/constants.hpp"
#include "core/laminar.hpp"
#include "core/profile.hpp"
#include "core/sturm.hpp"

namespace shearwave {

/// First-order periodic wave h(q,p) = H(p) + s v(p) cos(kn q) on a
/// rectangular grid over one period times [p0, 0]. Breakpoints are always
/// grid rows; the p-grid is uniform within each layer. The generating data is
/// kept so h and its first derivatives can be evaluated exactly at arbitrary
/// points (v interpolated by cubic Hermite on the shooting nodes).
class WaveField {
  public:
    /// Laminar field (amplitude 0); wavenumber 1 fixes the q-period at 2 pi.
    static WaveField laminar(VorticityProfile profile, PhysicalConstants constants, double lambda,
                             int nq, int np_per_layer);

    /// Field seeded by a bifurcation point. |s| must stay below half the
    /// amplitude at which min h_p > 0 could fail (see safe_amplitude_cap);
    /// the cap can be disabled to study inadmissible fields.
    static WaveField first_order(VorticityProfile profile, PhysicalConstants constants,
                                 const BifurcationPoint& bif, double amplitude, int nq,
                                 int np_per_layer, bool enforce_amplitude_cap = true);

    const VorticityProfile& profile() const { return profile_; }
    const PhysicalConstants& constants() const { return constants_; }
    const LaminarFlow& flow() const { return flow_; }
    double lambda() const { return flow_.lambda(); }
    double amplitude() const { return amplitude_; }
    int wavenumber() const { return wavenumber_; }
    double period() const;

    int nq() const { return nq_; }
    int np() const { return static_cast<int>(p_.size()); }
    const std::vector<double>& q_grid() const { return q_; }
    const std::vector<double>& p_grid() const { return p_; }
    /// Row index of breakpoint i (0-based; row 0 is the bed, last row the surface).
    const std::vector<std::size_t>& breakpoint_rows() const { return bp_rows_; }

    double h_grid(std::size_t row, std::size_t col) const { return h_[row * nq_ + col]; }

    /// Exact evaluations from the generating data.
    double h(double q, double p) const;
    double h_p(double q, double p) const;
    double h_q(double q, double p) const;
    double eigenfunction(double p) const;
    double eigenfunction_derivative(double p) const;

    /// Surface elevation eta(q) = h(q, 0) - d.
    double eta(double q) const;
    double eta_q(double q) const;
    double eta_qq(double q) const;

  private:
    WaveField(VorticityProfile profile, PhysicalConstants constants, double lambda,
              double amplitude, int wavenumber, std::vector<double> vp, std::vector<double> vv,
              std::vector<double> vd, int nq, int np_per_layer);

    void assemble();

    VorticityProfile profile_;
    PhysicalConstants constants_;
    LaminarFlow flow_;
    double amplitude_;
    int wavenumber_;
    // Eigenfunction samples (p ascending, per-layer uniform) and derivatives.
    std::vector<double> ev_p_, ev_v_, ev_vp_;
    std::vector<std::size_t> ev_layer_first_;

    int nq_;
    std::vector<double> q_, p_;
    std::vector<std::size_t> bp_rows_;
    std::vector<double> h_;  // np x nq, row-major
};

/// Largest amplitude guaranteed to keep min h_p > 0, already halved as a
/// safety margin.
double safe_amplitude_cap(const LaminarFlow& flow, const BifurcationPoint& bif);

/// Min over grid nodes of the one-sided/centered finite-difference h_p,
/// paired with the positivity verdict (the PBC condition).
struct PbcCheck {
    double min_h_p = 0.0;
    bool ok = false;
};
PbcCheck check_pbc(const WaveField& field);

/// Sup-norms of the height-formulation residuals by second-order finite
/// differences on the grid, never differencing across a breakpoint row.
/// The *_coarse values re-evaluate on every second node as a step-halving
/// report (ratio ~ 4 means the numbers are discretization floor).
struct PbResidual {
    std::vector<double> interior;         // per layer
    double surface = 0.0;
    double bottom = 0.0;
    std::vector<double> interior_coarse;
    double surface_coarse = 0.0;
};
PbResidual pb_residual(const WaveField& field, double total_head);

/// Compactly supported tensor test bump (1-t^2)^2 in each direction.
struct TestBump {
    double q_center = 0.0, q_halfwidth = 1.0;
    double p_center = 0.0, p_halfwidth = 1.0;
};

/// Weak-form values int (h_q/h_p phi_q - (Gamma + (1+h_q^2)/(2 h_p^2)) phi_p)
/// by the midpoint rule on the grid cells, one value per bump. The default
/// bump set covers the domain and straddles every breakpoint.
std::vector<double> weak_residual(const WaveField& field, const std::vector<TestBump>& bumps);
std::vector<TestBump> default_bumps(const WaveField& field);

/// Vertical ray of the stream function: psi_y = -1/h_p(x, -psi),
/// psi(x, eta(x)) = 0, integrated down to the bed y = -d.
struct StreamSample {
    double x = 0.0;
    std::vector<double> y;
    std::vector<double> psi;
};
StreamSample stream_function(const WaveField& field, double x, int samples = 400,
                             int steps = 4000);

/// psi at one point (same downward integration, stopped at y).
double stream_function_value(const WaveField& field, double x, double y, int steps = 4000);

/// Velocity and pressure along a ray; v = -psi_x by centered differences
/// across neighboring rays, pressure from the Bernoulli relation with the
/// constant fixed at the crest surface point (atmospheric pressure 0).
struct PhysicalRay {
    double x = 0.0;
    std::vector<double> y;
    std::vector<double> psi;
    std::vector<double> u_minus_c;
    std::vector<double> v;
    std::vector<double> pressure;
};
PhysicalRay physical_fields(const WaveField& field, double x, int samples = 400,
                            double dx = 1e-4, int steps = 4000);

}  // namespace shearwave
