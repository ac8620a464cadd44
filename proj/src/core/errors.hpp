#pragma once

#include <stdexcept>
#include <string>

namespace shearwave {

/// Argument outside the mathematical domain of an operation (p off [p0,0],
/// lambda at or below 2*sup Gamma, mu(lambda) requested left of lambda0, ...).
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Malformed input data (profile arrays, config fragments). The message names
/// the offending entry, including its index where applicable.
class InvalidInput : public std::invalid_argument {
  public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to complete (bracket not found, post-check
/// violated, step collapse). Message carries the operation and parameters.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Denominator of the multiplier symbol vanished, or a fit system is singular.
class SingularError : public std::runtime_error {
  public:
    explicit SingularError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested mode (k,n) has (kn)^2 below mu(lambda0); no bifurcation point.
class InfeasibleModeError : public std::runtime_error {
  public:
    explicit InfeasibleModeError(const std::string& what) : std::runtime_error(what) {}
};

/// Wave amplitude outside the safe range where min h_p > 0 is guaranteed.
class AmplitudeError : public std::runtime_error {
  public:
    explicit AmplitudeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace shearwave
