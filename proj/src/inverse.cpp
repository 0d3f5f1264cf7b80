#include "coreshell/inverse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "coreshell/errors.hpp"
#include "coreshell/fdsolver.hpp"

namespace coreshell::inverse {

using dnmap::PotentialProfile;

namespace {

constexpr double kStationarityTol = 1e-12;
constexpr double kStationarityAccept = 1e-10;
constexpr int kMaxNewtonIterations = 100;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double lambda_at(double r1, double sigma) {
    return dnmap::dn_multiplier(PotentialProfile(r1, sigma)).lambda;
}

// Smallest sigma keeping the Bessel argument r1/sqrt(sigma) inside the
// supported range, with margin.
double sigma_lower_bound(double r1) {
    const double bound = (r1 / 690.0) * (r1 / 690.0);
    return std::max(bound, 1e-12);
}

template <typename Fn>
auto with_stage(const char* stage, Fn&& fn) {
    const auto tag = [stage](const Error& e) {
        return "[stage:" + std::string(stage) + "] " + e.what();
    };
    try {
        return fn();
    } catch (const DomainError& e) {
        throw DomainError(tag(e));
    } catch (const RangeError& e) {
        throw RangeError(tag(e));
    } catch (const DegenerateConfigurationError& e) {
        throw DegenerateConfigurationError(tag(e));
    } catch (const GridAlignmentError& e) {
        throw GridAlignmentError(tag(e));
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(tag(e), e.last_sigma(), e.last_grad());
    } catch (const DiscrepancyError& e) {
        throw DiscrepancyError(tag(e), e.residual_min(), e.residual_max());
    } catch (const SolverError& e) {
        throw SolverError(tag(e));
    }
}

}  // namespace

double standard_normal_draw(std::uint64_t seed) {
    std::mt19937_64 engine(splitmix64(seed));
    const auto unit = [&engine] {
        // 53 uniform bits, centered: strictly inside (0, 1)
        return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
    };
    const double u1 = unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

NoisyMeasurement make_noisy(double g, double delta, std::uint64_t seed) {
    if (!std::isfinite(g)) throw DomainError("make_noisy: g must be finite");
    if (!std::isfinite(delta) || delta < 0.0) {
        throw DomainError("make_noisy: delta must be finite and >= 0");
    }
    if (delta == 0.0) return {g, g, delta, seed};
    return {g, g + delta * standard_normal_draw(seed), delta, seed};
}

double tikhonov_value(double sigma, double f, double g_delta, double alpha, double r1) {
    if (!std::isfinite(f) || !std::isfinite(g_delta)) {
        throw DomainError("tikhonov_value: f and g_delta must be finite");
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw DomainError("tikhonov_value: alpha must be finite and >= 0");
    }
    const double misfit = lambda_at(r1, sigma) * f - g_delta;
    return 0.5 * misfit * misfit + 0.5 * alpha * sigma * sigma;
}

double tikhonov_grad(double sigma, double f, double g_delta, double alpha, double r1) {
    const PotentialProfile profile(r1, sigma);
    const double misfit = dnmap::dn_multiplier(profile).lambda * f - g_delta;
    return misfit * f * dnmap::dlambda_dsigma(profile) + alpha * sigma;
}

TikhonovResult minimize_newton(double f, double g_delta, double alpha, double r1,
                               double sigma_init) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("minimize_newton: alpha must be positive");
    }
    if (!(sigma_init > 0.0) || !std::isfinite(sigma_init)) {
        throw DomainError("minimize_newton: sigma_init must be positive");
    }
    const auto dphi = [&](double s) {
        const double sigma = std::exp(s);
        return tikhonov_grad(sigma, f, g_delta, alpha, r1) * sigma;
    };
    const auto finish = [&](double s, int it) -> TikhonovResult {
        const double sigma = std::exp(s);
        return {sigma, alpha, std::abs(lambda_at(r1, sigma) * f - g_delta),
                std::numeric_limits<double>::quiet_NaN(), false, it};
    };

    // Newton on phi'(s) = sigma * dT/dsigma, safeguarded by a sign-change
    // bracket: a step leaving the bracket is replaced by bisection. The
    // bracket limits are the representable sigma range; phi' > 0 at the top
    // always (the penalty term), phi' < 0 at the bottom unless the infimum
    // sits on the open boundary sigma -> 0, which has no stationary point.
    double s_lo = std::log(sigma_lower_bound(r1));
    double s_hi = std::log(1e8);
    const double g_lo = dphi(s_lo);
    const double g_hi = dphi(s_hi);
    if (std::abs(tikhonov_grad(std::exp(s_lo), f, g_delta, alpha, r1)) <= kStationarityTol) {
        return finish(s_lo, 0);
    }
    if (g_lo > 0.0) {
        throw ConvergenceError(
            "T_alpha has no stationary point: the infimum sits at the sigma -> 0 boundary",
            std::exp(s_lo), g_lo);
    }
    if (g_hi < 0.0) {
        throw ConvergenceError(
            "T_alpha has no stationary point below the sigma upper bound", std::exp(s_hi),
            g_hi);
    }

    double s = std::min(std::max(std::log(sigma_init), s_lo), s_hi);
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
        const double sigma = std::exp(s);
        const double grad = tikhonov_grad(sigma, f, g_delta, alpha, r1);
        if (std::abs(grad) <= kStationarityTol) return finish(s, it);
        const double g1 = grad * sigma;
        if (g1 < 0.0) {
            s_lo = s;
        } else {
            s_hi = s;
        }
        if (s_hi - s_lo <= 1e-15 * std::max(1.0, std::abs(s))) {
            if (std::abs(grad) <= kStationarityAccept) return finish(s, it);
            throw ConvergenceError("stationarity bracket collapsed at |T'| = " +
                                       std::to_string(std::abs(grad)),
                                   sigma, grad);
        }
        const double h = 1e-7;
        const double curvature = (dphi(s + h) - dphi(s - h)) / (2.0 * h);
        double s_next = 0.5 * (s_lo + s_hi);
        if (std::isfinite(curvature) && curvature > 0.0) {
            const double newton = s - g1 / curvature;
            if (newton > s_lo && newton < s_hi) s_next = newton;
        }
        s = s_next;
    }
    const double grad = tikhonov_grad(std::exp(s), f, g_delta, alpha, r1);
    if (std::abs(grad) <= kStationarityAccept) return finish(s, kMaxNewtonIterations);
    throw ConvergenceError("Newton did not reach |T'| <= 1e-10 within " +
                               std::to_string(kMaxNewtonIterations) + " iterations",
                           std::exp(s), grad);
}

double choose_alpha_discrepancy(double f, double g_delta, double delta, double r1,
                                double tau) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw DomainError("choose_alpha_discrepancy: delta must be positive");
    }
    const double lo_band = delta;
    const double hi_band = tau * delta;
    double res_min = std::numeric_limits<double>::infinity();
    double res_max = 0.0;
    const auto residual_at = [&](double alpha, double sigma_init) {
        const TikhonovResult r = minimize_newton(f, g_delta, alpha, r1, sigma_init);
        res_min = std::min(res_min, r.residual);
        res_max = std::max(res_max, r.residual);
        return std::pair<double, double>(r.residual, r.sigma_est);
    };
    const auto fail = [&](const char* why) -> DiscrepancyError {
        std::ostringstream msg;
        msg << why << ": band [" << lo_band << ", " << hi_band
            << "], achieved residual range [" << res_min << ", " << res_max << "]";
        return DiscrepancyError(msg.str(), res_min, res_max);
    };

    double alpha_prev = 0.0;
    double sigma_warm = 1.0;
    for (int k = 0; k <= 56; ++k) {
        const double alpha = kAlphaScanTop * std::pow(10.0, -k / 4.0);
        const auto [res, sigma] = residual_at(alpha, sigma_warm);
        sigma_warm = sigma;
        if (res >= lo_band && res <= hi_band) return alpha;
        if (res < lo_band) {
            if (k == 0) throw fail("residual already below the band at the scan top");
            // jumped over the band: log-bisect between the bracketing alphas
            double a_hi = alpha_prev;  // residual > hi_band here
            double a_lo = alpha;       // residual < lo_band here
            for (int it = 0; it < 200 && a_hi / a_lo > 1.0 + 1e-12; ++it) {
                const double mid = std::sqrt(a_hi * a_lo);
                const auto [rm, sm] = residual_at(mid, sigma_warm);
                if (rm >= lo_band && rm <= hi_band) return mid;
                if (rm < lo_band) {
                    a_lo = mid;
                } else {
                    a_hi = mid;
                }
            }
            throw fail("bisection exhausted without landing in the band");
        }
        alpha_prev = alpha;
    }
    throw fail("residual above the band for every alpha in the scan");
}

TikhonovResult reconstruct(const PotentialProfile& truth, double delta, std::uint64_t seed,
                           const ReconstructOptions& options) {
    if (!std::isfinite(delta) || delta < 0.0) {
        throw DomainError("reconstruct: delta must be finite and >= 0");
    }
    const double g_clean = with_stage("forward", [&] {
        if (options.analytic_data) {
            return dnmap::dn_multiplier(truth).apply(options.f);
        }
        const double n_real = 1.0 / options.dr;
        const int n = static_cast<int>(std::round(n_real));
        if (std::abs(n_real - n) > 1e-9) {
            throw DomainError("dr must divide 1 into an integer number of steps");
        }
        return fdsolver::solve_fd(options.f, truth, n, options.pin_center).neumann;
    });

    const NoisyMeasurement noisy =
        with_stage("noise", [&] { return make_noisy(g_clean, delta, seed); });

    const double alpha = with_stage("alpha", [&] {
        if (options.alpha_override) return *options.alpha_override;
        if (delta == 0.0) return options.alpha_floor;
        return choose_alpha_discrepancy(options.f, noisy.g_delta, delta, truth.r1,
                                        options.tau);
    });

    TikhonovResult result = with_stage("newton", [&] {
        return minimize_newton(options.f, noisy.g_delta, alpha, truth.r1,
                               options.sigma_init);
    });
    result.eps_abs = std::abs(result.sigma_est - truth.sigma1);
    result.has_truth = true;
    return result;
}

std::string to_json_record(const TikhonovResult& result, const PotentialProfile& truth,
                           double delta, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["r1"] = truth.r1;
    j["sigma_true"] = truth.sigma1;
    j["delta"] = delta;
    j["seed"] = seed;
    j["alpha"] = result.alpha;
    j["sigma_est"] = result.sigma_est;
    j["residual"] = result.residual;
    j["eps_abs"] = result.eps_abs;
    j["iterations"] = result.iterations;
    return j.dump();
}

std::vector<EnsembleRow> reconstruct_ensemble(const PotentialProfile& truth, double delta,
                                              std::uint64_t seed0, int count,
                                              const ReconstructOptions& options) {
    if (count < 0) throw DomainError("reconstruct_ensemble: count must be >= 0");
    std::vector<EnsembleRow> rows(static_cast<size_t>(count));
    // The clean forward solve is seed-independent; do it once up front so the
    // workers only differ in the noise draw and the inversion.
    ReconstructOptions per_seed = options;
    double g_clean = 0.0;
    if (count > 0 && !options.analytic_data) {
        const int n = static_cast<int>(std::round(1.0 / options.dr));
        g_clean = fdsolver::solve_fd(options.f, truth, n, options.pin_center).neumann;
    }
    const auto run_one = [&](size_t i) {
        const std::uint64_t seed = seed0 + i;
        rows[i].seed = seed;
        try {
            if (options.analytic_data) {
                rows[i].result = reconstruct(truth, delta, seed, per_seed);
            } else {
                // inline pipeline over the precomputed g_clean
                const NoisyMeasurement noisy = make_noisy(g_clean, delta, seed);
                const double alpha =
                    options.alpha_override
                        ? *options.alpha_override
                        : (delta == 0.0 ? options.alpha_floor
                                        : choose_alpha_discrepancy(options.f, noisy.g_delta,
                                                                   delta, truth.r1,
                                                                   options.tau));
                TikhonovResult r = minimize_newton(options.f, noisy.g_delta, alpha, truth.r1,
                                                   options.sigma_init);
                r.eps_abs = std::abs(r.sigma_est - truth.sigma1);
                r.has_truth = true;
                rows[i].result = r;
            }
        } catch (const Error& e) {
            rows[i].error = std::string(e.code()) + ": " + e.what();
        } catch (const std::exception& e) {
            rows[i].error = std::string("unexpected: ") + e.what();
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads = std::min<unsigned>(hw, static_cast<unsigned>(count));
    if (n_threads <= 1) {
        for (size_t i = 0; i < rows.size(); ++i) run_one(i);
        return rows;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        workers.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < rows.size(); i = next.fetch_add(1)) {
                run_one(i);
            }
        });
    }
    for (auto& w : workers) w.join();
    return rows;
}

double median_eps_abs(const std::vector<EnsembleRow>& rows) {
    std::vector<double> eps;
    eps.reserve(rows.size());
    for (const auto& row : rows) {
        eps.push_back(row.result ? row.result->eps_abs
                                 : std::numeric_limits<double>::infinity());
    }
    if (eps.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(eps.begin(), eps.end());
    const size_t n = eps.size();
    return (n % 2 == 1) ? eps[n / 2] : 0.5 * (eps[n / 2 - 1] + eps[n / 2]);
}

}  // namespace coreshell::inverse
