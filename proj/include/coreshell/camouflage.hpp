#pragma once

// Nonuniqueness ("camouflage") configurations: two distinct core-shell
// profiles with identical DN maps, characterized by a vanishing 3x3
// determinant of Jaeger D-functions and Bessel values.

#include <utility>
#include <vector>

#include "coreshell/dnmap.hpp"

namespace coreshell::camouflage {

struct CamouflagePair {
    dnmap::PotentialProfile p;
    dnmap::PotentialProfile q;
    double det_residual;  // scaled determinant at (p, q)
    double dn_residual;   // |lambda(p) - lambda(q)|
};

// Determinant of
//   | D10(r1,r2)          sqrt(s1) I1(r1/sqrt(s1))   D11(r1,r2) |
//   | I0(r2/sqrt(s2))     0                          sqrt(s2) I1(r2/sqrt(s2)) |
//   | D(r1,r2)            I0(r1/sqrt(s1))            D01(r1,r2) |
// with each row scaled to unit max-norm before cofactor expansion.
// Zero exactly when the two profiles share a DN multiplier.
double det_d(double r1, double sigma1, double r2, double sigma2);

// Scan bounds for sigma2 brackets.
inline constexpr double kScanLow = 1e-4;
inline constexpr double kScanHigh = 1e3;
inline constexpr int kScanPoints = 200;

// Root of det_d(r1, sigma1, r2, .) inside `bracket`. If the bracket carries
// no sign change, a log-grid scan over (kScanLow, kScanHigh) is used to find
// one (NoRootError if none exists). The bracket is narrowed to a relative
// width of 1e-13 by bisection with secant acceleration.
double find_sigma2(double r1, double sigma1, double r2,
                   std::pair<double, double> bracket);

// All roots bracketed by the log-grid scan, ascending. Empty is impossible:
// NoRootError is thrown instead so callers see the scan profile.
std::vector<double> find_all_sigma2(double r1, double sigma1, double r2);

// Solves for sigma2 and packages the pair with its residuals.
CamouflagePair build_pair(double r1, double sigma1, double r2);

struct PairVerification {
    double dn_residual;                 // |lambda(p) f - lambda(q) f|
    std::vector<double> fd_residuals;   // |g_N(p) - g_N(q)| per requested N
};

PairVerification verify_pair(const CamouflagePair& pair, double f,
                             const std::vector<int>& fd_check_ns = {});

}  // namespace coreshell::camouflage
