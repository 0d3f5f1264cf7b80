#pragma once

// Modified Bessel functions I0, I1, K0, K1 on positive real arguments.
// Self-contained kernel; all functions are pure and thread-safe.

namespace coreshell::specfun {

// Value plus a conservative estimate of the absolute evaluation error.
struct BesselEval {
    double value;
    double estimated_abs_error;
};

// Arguments must be finite; x >= 0 for I, x > 0 for K (DomainError otherwise).
// x > 700 raises RangeError instead of producing an overflow/underflow.
BesselEval bessel_i0_eval(double x);
BesselEval bessel_i1_eval(double x);
BesselEval bessel_k0_eval(double x);
BesselEval bessel_k1_eval(double x);

double bessel_i0(double x);
double bessel_i1(double x);
double bessel_k0(double x);
double bessel_k1(double x);

// Largest accepted argument.
inline constexpr double kMaxArgument = 700.0;

}  // namespace coreshell::specfun
