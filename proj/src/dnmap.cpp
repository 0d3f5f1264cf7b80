#include "coreshell/dnmap.hpp"

#include <cmath>
#include <string>

#include "coreshell/errors.hpp"
#include "coreshell/specfun.hpp"

namespace coreshell::dnmap {

using specfun::bessel_i0;
using specfun::bessel_i1;
using specfun::bessel_k0;
using specfun::bessel_k1;

namespace {

constexpr double kDegenerateThreshold = 1e-14;

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be finite");
    }
}

struct RhoParts {
    double numerator;
    double denominator;
};

// rho = (s I1(r1/s) I0(r1) - I0(r1/s) I1(r1)) / (s I1(r1/s) K0(r1) + I0(r1/s) K1(r1)),
// s = sqrt(sigma1). The denominator is a sum of positive terms.
RhoParts rho_parts(const PotentialProfile& profile) {
    const double s = std::sqrt(profile.sigma1);
    const double u = profile.r1 / s;
    const double si1u = s * bessel_i1(u);
    const double i0u = bessel_i0(u);
    return {si1u * bessel_i0(profile.r1) - i0u * bessel_i1(profile.r1),
            si1u * bessel_k0(profile.r1) + i0u * bessel_k1(profile.r1)};
}

double dn_denominator(double rho_value) {
    return rho_value * bessel_k0(1.0) - bessel_i0(1.0);
}

}  // namespace

PotentialProfile::PotentialProfile(double r1_, double sigma1_) : r1(r1_), sigma1(sigma1_) {
    require_finite(r1, "r1");
    require_finite(sigma1, "sigma1");
    if (!(r1 > 0.0 && r1 < 1.0)) {
        throw DomainError("r1 must lie in (0, 1), got " + std::to_string(r1));
    }
    if (!(sigma1 > 0.0)) {
        throw DomainError("sigma1 must be positive, got " + std::to_string(sigma1));
    }
}

PhysicalScaling::PhysicalScaling(double hbar_, double mass_, double energy_)
    : hbar(hbar_), mass(mass_), energy(energy_) {
    require_finite(hbar, "hbar");
    require_finite(mass, "mass");
    require_finite(energy, "energy");
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
}

double DnMultiplier::operator_norm() const { return std::abs(lambda); }

double rho(const PotentialProfile& profile) {
    const RhoParts parts = rho_parts(profile);
    return parts.numerator / parts.denominator;
}

ShellCoefficients shell_coefficients(double f, const PotentialProfile& profile) {
    require_finite(f, "f");
    const double rho_value = rho(profile);
    const double den = dn_denominator(rho_value);
    if (std::abs(den) < kDegenerateThreshold) {
        throw DegenerateConfigurationError(
            "|rho K0(1) - I0(1)| below threshold: " + std::to_string(den));
    }
    const double a1 = -f / den;
    const double b1 = rho_value * f / den;
    const double a0 = (rho_value * bessel_k0(profile.r1) - bessel_i0(profile.r1)) * f /
                      (den * bessel_i0(profile.r1 / std::sqrt(profile.sigma1)));
    return {a0, a1, b1, rho_value};
}

double psi_analytic(double r, double f, const PotentialProfile& profile) {
    if (!std::isfinite(r) || r < 0.0 || r > 1.0) {
        throw DomainError("psi_analytic: r must lie in [0, 1]");
    }
    const ShellCoefficients c = shell_coefficients(f, profile);
    if (r < profile.r1) {
        return c.a0 * bessel_i0(r / std::sqrt(profile.sigma1));
    }
    return c.a1 * bessel_i0(r) + c.b1 * bessel_k0(r);
}

DnMultiplier detail::dn_multiplier_from_rho(double rho_value) {
    const double den = dn_denominator(rho_value);
    if (std::abs(den) < kDegenerateThreshold) {
        throw DegenerateConfigurationError(
            "|rho K0(1) - I0(1)| below threshold: " + std::to_string(den));
    }
    return {-(rho_value * bessel_k1(1.0) + bessel_i1(1.0)) / den};
}

DnMultiplier dn_multiplier(const PotentialProfile& profile) {
    return detail::dn_multiplier_from_rho(rho(profile));
}

DnMultiplier dn_multiplier_jaeger(const PotentialProfile& profile) {
    const double s = std::sqrt(profile.sigma1);
    const double u = profile.r1 / s;
    const double i0u = bessel_i0(u);
    const double si1u = s * bessel_i1(u);
    const double num = i0u * jaeger_d11(1.0, profile.r1) - si1u * jaeger_d10(1.0, profile.r1);
    const double den = i0u * jaeger_d01(1.0, profile.r1) - si1u * jaeger_d(1.0, profile.r1);
    if (std::abs(den) < kDegenerateThreshold) {
        throw DegenerateConfigurationError("Jaeger-form denominator below threshold");
    }
    return {num / den};
}

DnMultiplier disk_dn_multiplier() { return {bessel_i1(1.0) / bessel_i0(1.0)}; }

double dn_distance(const PotentialProfile& p, const PotentialProfile& q) {
    return std::abs(dn_multiplier(p).lambda - dn_multiplier(q).lambda);
}

double dlambda_dsigma(const PotentialProfile& profile) {
    const double sigma = profile.sigma1;
    const double r1 = profile.r1;
    const double s = std::sqrt(sigma);
    const double z = r1 / s;
    // Everything is scaled by I0(z): the raw numerator/denominator grow like
    // e^z and their squares overflow long before z hits the range guard.
    const double q = bessel_i1(z) / bessel_i0(z);
    const double i0r = bessel_i0(r1), i1r = bessel_i1(r1);
    const double k0r = bessel_k0(r1), k1r = bessel_k1(r1);
    // d(s I1(z))/dsigma and d(I0(z))/dsigma with z = r1/sqrt(sigma), /I0(z).
    const double dA = (2.0 * q - z) / (2.0 * s);
    const double dB = -z * q / (2.0 * sigma);
    const double num = s * q * i0r - i1r;
    const double den = s * q * k0r + k1r;
    const double dnum = dA * i0r - dB * i1r;
    const double dden = dA * k0r + dB * k1r;
    const double drho = (dnum * den - num * dden) / (den * den);
    const double dn_den = dn_denominator(num / den);
    if (std::abs(dn_den) < kDegenerateThreshold) {
        throw DegenerateConfigurationError("degenerate denominator in dlambda_dsigma");
    }
    // dlambda/drho = (I0(1)K1(1) + I1(1)K0(1)) / den^2 = 1/den^2 by the Wronskian.
    return drho / (dn_den * dn_den);
}

double jaeger_d(double x, double y) {
    return bessel_i0(x) * bessel_k0(y) - bessel_k0(x) * bessel_i0(y);
}

double jaeger_d10(double x, double y) {
    return bessel_i1(x) * bessel_k0(y) + bessel_k1(x) * bessel_i0(y);
}

double jaeger_d01(double x, double y) {
    return -bessel_i0(x) * bessel_k1(y) - bessel_k0(x) * bessel_i1(y);
}

double jaeger_d11(double x, double y) {
    return bessel_k1(x) * bessel_i1(y) - bessel_i1(x) * bessel_k1(y);
}

double monotone_f(double eta, double r) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("monotone_f: eta must be > 0");
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("monotone_f: r must be > 0");
    const double z = r / eta;
    return eta * bessel_i1(z) / bessel_i0(z);
}

std::pair<double, double> physical_potential(const PotentialProfile& profile,
                                             const PhysicalScaling& scaling) {
    const double unit = scaling.hbar * scaling.hbar / (2.0 * scaling.mass);
    return {scaling.energy + unit / profile.sigma1, scaling.energy + unit};
}

}  // namespace coreshell::dnmap
