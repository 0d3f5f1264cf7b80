#pragma once

#include <stdexcept>
#include <string>

namespace coreshell {

// Base for all library errors. `code()` is a short stable token used by the
// CLI for machine-parsable error lines and exit-code mapping.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

// Argument inside the domain but outside the supported evaluation range.
class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error("range", what) {}
};

// |rho*K0(1) - I0(1)| below threshold; the DN multiplier is not evaluable.
class DegenerateConfigurationError : public Error {
public:
    explicit DegenerateConfigurationError(const std::string& what)
        : Error("degenerate-configuration", what) {}
};

// r1 does not land on a grid node.
class GridAlignmentError : public Error {
public:
    explicit GridAlignmentError(const std::string& what)
        : Error("grid-alignment", what) {}
};

class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error("solver", what) {}
};

// Iterative minimization failed to reach the stationarity tolerance.
// Carries the last iterate so callers can inspect where it stalled.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_sigma, double last_grad)
        : Error("convergence", what), last_sigma_(last_sigma), last_grad_(last_grad) {}
    double last_sigma() const noexcept { return last_sigma_; }
    double last_grad() const noexcept { return last_grad_; }

private:
    double last_sigma_;
    double last_grad_;
};

// No regularization parameter in the scan range puts the residual into the
// discrepancy band [delta, tau*delta]. Carries the achieved residual range.
class DiscrepancyError : public Error {
public:
    DiscrepancyError(const std::string& what, double residual_min, double residual_max)
        : Error("discrepancy", what),
          residual_min_(residual_min),
          residual_max_(residual_max) {}
    double residual_min() const noexcept { return residual_min_; }
    double residual_max() const noexcept { return residual_max_; }

private:
    double residual_min_;
    double residual_max_;
};

// Sign-change scan found no root of the camouflage determinant.
class NoRootError : public Error {
public:
    explicit NoRootError(const std::string& what) : Error("no-root", what) {}
};

}  // namespace coreshell
