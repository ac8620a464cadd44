#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace shearwave {

/// Piecewise-constant vorticity distribution over the stream-coordinate
/// interval [p0, 0]. Layer i (1-based) occupies (p_{i-1}, p_i) and carries the
/// constant vorticity gamma_i; the last breakpoint is exactly 0.
///
/// gamma_at follows the right-continuity convention at interior breakpoints
/// (value of the layer above); the choice is measure-zero and nothing
/// downstream depends on it. Immutable after construction.
class VorticityProfile {
  public:
    VorticityProfile(std::vector<double> breakpoints, std::vector<double> vorticities);

    /// Parses `{"breakpoints": [...], "vorticities": [...]}`. Rejects unknown
    /// keys; validation errors name the offending entry index.
    static VorticityProfile from_json(const std::string& json_text);
    std::string to_json() const;

    std::size_t layer_count() const { return vorticities_.size(); }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& vorticities() const { return vorticities_; }
    double p0() const { return breakpoints_.front(); }

    /// gamma(p); right-continuous at breakpoints, gamma_N at p=0.
    double gamma_at(double p) const;

    /// Gamma(p) = integral of gamma from 0 to p, evaluated exactly
    /// (piecewise linear, anchored at Gamma(0) = 0).
    double big_gamma(double p) const;

    /// max of Gamma over [p0,0]; attained at a breakpoint by linearity.
    double gamma_sup() const { return gamma_sup_; }

    /// Gamma at breakpoint i (0-based, i = 0..N).
    double big_gamma_breakpoint(std::size_t i) const { return gamma_bp_[i]; }

    /// Index i of the layer (1-based) whose closed interval [p_{i-1}, p_i]
    /// contains p, resolving breakpoints upward (right-continuity).
    std::size_t layer_of(double p) const;

    bool operator==(const VorticityProfile& o) const {
        return breakpoints_ == o.breakpoints_ && vorticities_ == o.vorticities_;
    }

  private:
    void check_domain(double p) const;

    std::vector<double> breakpoints_;   // size N+1, strictly increasing, last == 0
    std::vector<double> vorticities_;   // size N
    std::vector<double> gamma_bp_;      // Gamma at each breakpoint
    double gamma_sup_ = 0.0;
};

/// Convenience factories used all over the tests.
VorticityProfile irrotational_profile(double p0);
VorticityProfile constant_vorticity_profile(double p0, double gamma);

}  // namespace shearwave
