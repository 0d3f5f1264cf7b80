#pragma once

// Tikhonov-regularized recovery of the core coefficient sigma1 from one noisy
// Neumann measurement: noise synthesis, functional evaluation, Newton
// minimization, discrepancy-principle alpha selection, and the end-to-end
// reconstruction pipeline.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coreshell/dnmap.hpp"

namespace coreshell::inverse {

struct NoisyMeasurement {
    double g_clean;
    double g_delta;
    double delta;
    std::uint64_t seed;
};

// g_delta = g + delta * zeta, zeta a single standard normal draw from a
// generator seeded with `seed` (splitmix-mixed, Box-Muller). Bit-identical
// for identical (g, delta, seed).
NoisyMeasurement make_noisy(double g, double delta, std::uint64_t seed);

// The standard normal draw used by make_noisy, exposed for statistical tests.
double standard_normal_draw(std::uint64_t seed);

// T_alpha(sigma) = 1/2 |lambda(sigma, r1) f - g_delta|^2 + 1/2 alpha sigma^2.
// alpha = 0 is accepted (unregularized functional).
double tikhonov_value(double sigma, double f, double g_delta, double alpha, double r1);

// dT_alpha/dsigma via the analytic dlambda/dsigma.
double tikhonov_grad(double sigma, double f, double g_delta, double alpha, double r1);

struct TikhonovResult {
    double sigma_est;
    double alpha;
    double residual;   // |lambda(sigma_est, r1) f - g_delta|
    double eps_abs;    // |sigma_est - sigma_true| when truth is known, else NaN
    bool has_truth;
    int iterations;
};

// Newton minimization over s = ln(sigma). Returns a stationary point with
// |dT/dsigma| <= 1e-10; throws ConvergenceError (carrying the last iterate)
// after 100 iterations without one.
TikhonovResult minimize_newton(double f, double g_delta, double alpha, double r1,
                               double sigma_init = 1.0);

// Discrepancy band parameters: accept alpha when the minimizer's residual
// lies in [delta, kTau * delta].
inline constexpr double kTau = 1.1;
inline constexpr double kAlphaScanTop = 1.0;
inline constexpr double kAlphaScanBottom = 1e-14;

// Geometric scan of alpha from kAlphaScanTop down to kAlphaScanBottom (ratio
// 10^{1/4}) followed by log-bisection between the bracketing grid points.
// Throws DiscrepancyError, reporting the achieved residual range, when no
// alpha in the scan puts the residual into the band.
double choose_alpha_discrepancy(double f, double g_delta, double delta, double r1,
                                double tau = kTau);

struct ReconstructOptions {
    double f = 1.0;
    double dr = 1e-4;                     // forward-solve step for the synthetic data
    bool analytic_data = false;           // bypass the FD solver (no forward bias)
    std::optional<double> pin_center;     // pin psi(0) in the FD data solve
    std::optional<double> alpha_override; // skip the discrepancy search
    double alpha_floor = 1e-14;           // alpha used when delta == 0
    double tau = kTau;
    double sigma_init = 1.0;
};

// Full pipeline: forward solve -> forward-difference g -> noise -> alpha
// choice -> Newton. Stage errors propagate with a "[stage:...]" tag.
TikhonovResult reconstruct(const dnmap::PotentialProfile& truth, double delta,
                           std::uint64_t seed, const ReconstructOptions& options = {});

// JSON record {r1, sigma_true, delta, seed, alpha, sigma_est, residual,
// eps_abs, iterations}, full double precision.
std::string to_json_record(const TikhonovResult& result, const dnmap::PotentialProfile& truth,
                           double delta, std::uint64_t seed);

struct EnsembleRow {
    std::uint64_t seed;
    std::optional<TikhonovResult> result;
    std::string error;  // empty on success
};

// Runs `count` reconstructions at seeds seed0, seed0+1, ... in parallel;
// rows are ordered by seed regardless of scheduling. Per-seed errors are
// captured in the row instead of thrown.
std::vector<EnsembleRow> reconstruct_ensemble(const dnmap::PotentialProfile& truth,
                                              double delta, std::uint64_t seed0, int count,
                                              const ReconstructOptions& options = {});

// Median of eps_abs over the rows; failed rows count as +infinity.
double median_eps_abs(const std::vector<EnsembleRow>& rows);

}  // namespace coreshell::inverse
