#pragma once

// Analytic solution of the core-shell transmission problem on the unit disk
// and the associated Dirichlet-to-Neumann multipliers.
//
// The disk is split at radius r1 into a core with rescaled potential
// coefficient sigma1 and a shell with coefficient 1. The radial solution is
// a combination of modified Bessel functions; the DN map acts on constant
// boundary data f as multiplication by a scalar lambda.
//
// Everything here is a pure function of its arguments; values are immutable
// and safe to share across threads.

#include <utility>

namespace coreshell::dnmap {

// Piecewise-constant potential description: core radius r1 (fraction of the
// outer radius) and core coefficient sigma1.
struct PotentialProfile {
    double r1;
    double sigma1;

    // Validates 0 < r1 < 1, sigma1 > 0, both finite (DomainError otherwise).
    PotentialProfile(double r1_, double sigma1_);
};

// Physical unit scales: U1 = E + hbar^2/(2 m sigma1), U2 = E + hbar^2/(2 m).
struct PhysicalScaling {
    double hbar;
    double mass;
    double energy;

    PhysicalScaling(double hbar_, double mass_, double energy_);
};

// Coefficients of the analytic solution for boundary datum f:
//   psi(r) = a0 I0(r/sqrt(sigma1))        in the core,
//   psi(r) = a1 I0(r) + b1 K0(r)          in the shell.
struct ShellCoefficients {
    double a0;
    double a1;
    double b1;
    double rho;
};

// The scalar multiplier: the DN map sends f to lambda*f.
struct DnMultiplier {
    double lambda;
    double apply(double f) const { return lambda * f; }
    double operator_norm() const;
};

// rho(r1, sigma1): ratio fixing the K-component of the shell solution.
// Vanishes identically at sigma1 = 1.
double rho(const PotentialProfile& profile);

// Solves the 3x3 transmission system for boundary datum f.
// Throws DegenerateConfigurationError if |rho K0(1) - I0(1)| < 1e-14.
ShellCoefficients shell_coefficients(double f, const PotentialProfile& profile);

// Piecewise analytic solution at radius r in [0, 1].
double psi_analytic(double r, double f, const PotentialProfile& profile);

// lambda = -(rho K1(1) + I1(1)) / (rho K0(1) - I0(1)).
DnMultiplier dn_multiplier(const PotentialProfile& profile);

// Same multiplier through the Jaeger D-function quotient; agrees with
// dn_multiplier to roundoff and serves as an independent evaluation route.
DnMultiplier dn_multiplier_jaeger(const PotentialProfile& profile);

// Homogeneous-disk multiplier I1(1)/I0(1).
DnMultiplier disk_dn_multiplier();

// |lambda(p) - lambda(q)|: operator-norm distance of the two multiplier maps.
double dn_distance(const PotentialProfile& p, const PotentialProfile& q);

// d lambda / d sigma1 at fixed r1, by analytic differentiation through rho.
double dlambda_dsigma(const PotentialProfile& profile);

// Jaeger cross-combinations:
//   D(x,y)     = I0(x)K0(y) - K0(x)I0(y)
//   D_{r,s}    = d^{r+s} D / dx^r dy^s
double jaeger_d(double x, double y);
double jaeger_d10(double x, double y);
double jaeger_d01(double x, double y);
double jaeger_d11(double x, double y);

// F(eta) = eta I1(r/eta) / I0(r/eta); strictly increasing in eta for r > 0.
double monotone_f(double eta, double r);

// Physical potential levels (U1, U2) for the given unit scales.
std::pair<double, double> physical_potential(const PotentialProfile& profile,
                                             const PhysicalScaling& scaling);

namespace detail {
// Assembles the multiplier from an already-computed rho; exposed so the
// degenerate-denominator guard is directly testable.
DnMultiplier dn_multiplier_from_rho(double rho_value);
}  // namespace detail

}  // namespace coreshell::dnmap
