// Acceptance suite: one line per criterion, PASS or FAIL, nonzero exit on any
// failure. `--criterion N` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coreshell/camouflage.hpp"
#include "coreshell/dnmap.hpp"
#include "coreshell/fdsolver.hpp"
#include "coreshell/inverse.hpp"
#include "coreshell/specfun.hpp"

namespace {

using coreshell::dnmap::PotentialProfile;
using coreshell::dnmap::dn_multiplier;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, i / (n - 1.0));
    return g;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

// criteria 1 and 2: deterministic reproduction of the published FD tables
Outcome table_reproduction(double r1, double sigma1, double r2, const double ref_lambda[4],
                           const double ref_eps[4], double eps_tol, double runtime_budget) {
    Outcome out;
    const auto t0 = Clock::now();
    const int ns[4] = {100, 200, 400, 800};
    const double sigma2 = coreshell::camouflage::find_sigma2(r1, sigma1, r2, {0, 0});
    const PotentialProfile p(r1, sigma1);
    const PotentialProfile q(r2, sigma2);
    double eps[4];
    for (int i = 0; i < 4; ++i) {
        const double gp = coreshell::fdsolver::solve_fd(1.0, p, ns[i]).neumann;
        const double gq = coreshell::fdsolver::solve_fd(1.0, q, ns[i]).neumann;
        eps[i] = std::abs(gp - gq);
        out.require(std::abs(gp - ref_lambda[i]) <= 5e-4,
                    "lambda(N=" + std::to_string(ns[i]) + ")=" + fmt(gp) + " vs ref " +
                        fmt(ref_lambda[i]) + " +-5e-4");
        out.require(std::abs(eps[i] - ref_eps[i]) <= eps_tol,
                    "eps(N=" + std::to_string(ns[i]) + ")=" + fmt(eps[i]) + " vs ref " +
                        fmt(ref_eps[i]) + " +-" + fmt(eps_tol));
    }
    for (int i = 1; i < 4; ++i) {
        const double ratio = eps[i - 1] / eps[i];
        out.require(ratio >= 1.7 && ratio <= 2.3, "eps ratio " + fmt(ratio) + " outside [1.7,2.3]");
    }
    const double dt = seconds_since(t0);
    out.require(dt < runtime_budget, "runtime " + fmt(dt) + "s over budget");
    if (out.pass) {
        out.detail << "eps = {" << fmt(eps[0]) << ", " << fmt(eps[1]) << ", " << fmt(eps[2])
                   << ", " << fmt(eps[3]) << "}, " << fmt(dt) << "s";
    }
    return out;
}

Outcome criterion1() {
    const double ref_lambda[4] = {0.4431, 0.4448, 0.4457, 0.4461};
    const double ref_eps[4] = {2.2122e-03, 1.0481e-03, 5.1991e-04, 2.5845e-04};
    return table_reproduction(0.3, 2.0, 0.7, ref_lambda, ref_eps, 1e-3, 5.0);
}

Outcome criterion2() {
    const double ref_lambda[4] = {0.4234, 0.4267, 0.4284, 0.4293};
    const double ref_eps[4] = {2.0125e-03, 1.0036e-03, 5.0138e-04, 2.5071e-04};
    return table_reproduction(0.8, 0.5, 0.4, ref_lambda, ref_eps, 2e-4, 5.0);
}

Outcome criterion3() {
    Outcome out;
    const auto t0 = Clock::now();
    const double s53 = coreshell::camouflage::find_sigma2(0.3, 2.0, 0.7, {0, 0});
    out.require(std::abs(s53 - 1.0161) <= 5e-4, "sigma2(0.3,2,0.7)=" + fmt(s53));
    out.require(coreshell::dnmap::dn_distance(PotentialProfile(0.3, 2.0),
                                              PotentialProfile(0.7, s53)) <= 1e-10,
                "DN mismatch at the first root");
    const double t1 = seconds_since(t0);
    out.require(t1 < 1.0, "first root runtime " + fmt(t1) + "s over 1s");

    const auto t2 = Clock::now();
    const double s54 = coreshell::camouflage::find_sigma2(0.8, 0.5, 0.4, {0, 0});
    out.require(std::abs(s54 - 0.0373) <= 5e-4, "sigma2(0.8,0.5,0.4)=" + fmt(s54));
    out.require(coreshell::dnmap::dn_distance(PotentialProfile(0.8, 0.5),
                                              PotentialProfile(0.4, s54)) <= 1e-10,
                "DN mismatch at the second root");
    const double t3 = seconds_since(t2);
    out.require(t3 < 1.0, "second root runtime " + fmt(t3) + "s over 1s");
    if (out.pass) out.detail << "sigma2 = " << fmt(s53) << ", " << fmt(s54);
    return out;
}

Outcome criterion4() {
    Outcome out;
    const double deltas[3] = {0.1, 0.01, 0.001};
    const double bands[3] = {5e-2, 5e-3, 1e-3};
    const PotentialProfile truths[2] = {PotentialProfile(0.7, 0.9),
                                        PotentialProfile(0.8, 1.5)};
    for (const auto& truth : truths) {
        const auto t0 = Clock::now();
        double medians[3];
        for (int i = 0; i < 3; ++i) {
            coreshell::inverse::ReconstructOptions opts;  // dr = 1e-4, discrepancy alpha
            const auto rows =
                coreshell::inverse::reconstruct_ensemble(truth, deltas[i], 42, 100, opts);
            int fails = 0;
            for (const auto& row : rows) fails += !row.result.has_value();
            medians[i] = coreshell::inverse::median_eps_abs(rows);
            std::ostringstream label;
            label << "(r1=" << truth.r1 << ", sigma1=" << truth.sigma1
                  << ", delta=" << deltas[i] << ") median eps_abs=" << fmt(medians[i])
                  << " (failed seeds " << fails << "/100)";
            out.require(medians[i] < bands[i],
                        label.str() + " exceeds band " + fmt(bands[i]));
        }
        out.require(medians[0] >= medians[1] && medians[1] >= medians[2],
                    "median eps_abs not non-increasing in decreasing delta");
        const double dt = seconds_since(t0);
        out.require(dt < 60.0, "table runtime " + fmt(dt) + "s over 60s");
    }
    return out;
}

Outcome criterion5() {
    Outcome out;
    const auto t0 = Clock::now();
    using coreshell::dnmap::jaeger_d;
    using coreshell::dnmap::jaeger_d01;
    using coreshell::dnmap::jaeger_d10;
    using coreshell::dnmap::jaeger_d11;

    std::mt19937 rng(20240511);
    std::uniform_real_distribution<double> dist(0.1, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double x = dist(rng), y = dist(rng), z = dist(rng);
        const double rhs1 = jaeger_d(z, y) / x;
        out.require(std::abs(jaeger_d(x, y) * jaeger_d10(x, z) -
                             jaeger_d(x, z) * jaeger_d10(x, y) - rhs1) <=
                        1e-11 * std::abs(rhs1),
                    "three-point identity (first) at triple " + std::to_string(i));
        const double rhs2 = jaeger_d10(z, y) / x;
        out.require(std::abs(jaeger_d(x, y) * jaeger_d11(x, z) -
                             jaeger_d01(x, z) * jaeger_d10(x, y) - rhs2) <=
                        1e-11 * std::abs(rhs2),
                    "three-point identity (second) at triple " + std::to_string(i));
        const double rhs3 = -jaeger_d11(z, y) / x;
        out.require(std::abs(jaeger_d11(x, y) * jaeger_d01(x, z) -
                             jaeger_d01(x, y) * jaeger_d11(x, z) - rhs3) <=
                        1e-11 * std::abs(rhs3),
                    "three-point identity (third) at triple " + std::to_string(i));
        out.require(std::abs(jaeger_d01(x, y) + jaeger_d10(y, x)) <=
                        1e-12 * std::abs(jaeger_d10(y, x)),
                    "transpose identity at triple " + std::to_string(i));
    }
    for (double x : log_grid(0.1, 10.0, 100)) {
        out.require(std::abs(jaeger_d10(x, x) - 1.0 / x) <= 1e-12 / x,
                    "diagonal identity at x=" + fmt(x));
    }
    // Wronskian on the grid
    for (double x : log_grid(0.05, 30.0, 200)) {
        const double w = coreshell::specfun::bessel_i0(x) * coreshell::specfun::bessel_k1(x) +
                         coreshell::specfun::bessel_i1(x) * coreshell::specfun::bessel_k0(x);
        out.require(std::abs(w - 1.0 / x) <= 1e-12 / x, "Wronskian at x=" + fmt(x));
    }
    // ratio lower bound
    for (double x : log_grid(0.05, 30.0, 200)) {
        const double bound = x * x / (std::sqrt(1.0 + x * x) + 1.0);
        out.require(x * coreshell::specfun::bessel_i1(x) / coreshell::specfun::bessel_i0(x) >
                        bound,
                    "ratio bound at x=" + fmt(x));
    }
    // strict monotonicity of F
    for (double r : {0.3, 0.7, 2.0}) {
        double prev = -1.0;
        for (double eta : log_grid(0.05, 50.0, 120)) {
            const double v = coreshell::dnmap::monotone_f(eta, r);
            out.require(v > prev, "F monotonicity at r=" + fmt(r) + ", eta=" + fmt(eta));
            prev = v;
        }
    }
    // the two multiplier forms agree on a 20x20 grid
    for (double r1 : log_grid(0.05, 0.95, 20)) {
        for (double sigma1 : log_grid(0.05, 20.0, 20)) {
            const PotentialProfile p(r1, sigma1);
            const double a = dn_multiplier(p).lambda;
            const double b = coreshell::dnmap::dn_multiplier_jaeger(p).lambda;
            out.require(std::abs(a - b) <= 1e-11 * std::abs(a),
                        "form equivalence at (" + fmt(r1) + ", " + fmt(sigma1) + ")");
        }
    }
    const double dt = seconds_since(t0);
    out.require(dt < 1.0, "runtime " + fmt(dt) + "s over 1s");
    if (out.pass) out.detail << "200 triples, 400-point form grid, " << fmt(dt) << "s";
    return out;
}

Outcome criterion6() {
    Outcome out;
    const auto t0 = Clock::now();
    double min_gap = 1e300;
    for (int ri = 1; ri <= 9; ++ri) {
        const double r1 = ri / 10.0;
        const auto sigmas = log_grid(0.05, 20.0, 30);
        std::vector<double> lambdas(sigmas.size());
        for (size_t i = 0; i < sigmas.size(); ++i) {
            lambdas[i] = dn_multiplier(PotentialProfile(r1, sigmas[i])).lambda;
        }
        for (size_t i = 0; i < lambdas.size(); ++i) {
            for (size_t j = i + 1; j < lambdas.size(); ++j) {
                min_gap = std::min(min_gap, std::abs(lambdas[i] - lambdas[j]));
            }
        }
    }
    out.require(min_gap > 1e-10, "smallest |dlambda| = " + fmt(min_gap));
    const double dt = seconds_since(t0);
    out.require(dt < 1.0, "runtime " + fmt(dt) + "s over 1s");
    if (out.pass) out.detail << "min gap " << fmt(min_gap) << ", " << fmt(dt) << "s";
    return out;
}

Outcome criterion7() {
    Outcome out;
    const auto t0 = Clock::now();
    const double disk = coreshell::dnmap::disk_dn_multiplier().lambda;
    const double gap_plus =
        std::abs(dn_multiplier(PotentialProfile(0.5, 1.0 + 1e-7)).lambda - disk);
    const double gap_minus =
        std::abs(dn_multiplier(PotentialProfile(0.5, 1.0 - 1e-7)).lambda - disk);
    out.require(gap_plus <= 1e-6, "sigma1->1 gap " + fmt(gap_plus));
    out.require(gap_minus <= 1e-6, "sigma1->1 gap " + fmt(gap_minus));
    const double gap_r = std::abs(dn_multiplier(PotentialProfile(1e-3, 4.0)).lambda - disk);
    out.require(gap_r <= 1e-5, "r1->0 gap " + fmt(gap_r));
    const double dt = seconds_since(t0);
    out.require(dt < 1.0, "runtime " + fmt(dt) + "s over 1s");
    if (out.pass) {
        out.detail << "gaps " << fmt(gap_plus) << "/" << fmt(gap_minus) << "/" << fmt(gap_r)
                   << ", " << fmt(dt) << "s";
    }
    return out;
}

Outcome criterion8() {
    Outcome out;
    const auto t0 = Clock::now();
    std::mt19937 rng(987654);
    std::uniform_real_distribution<double> rdist(0.1, 0.9);
    std::uniform_real_distribution<double> logs(-1.0, 1.0);
    std::uniform_real_distribution<double> loga(-8.0, -2.0);
    std::uniform_real_distribution<double> gshift(-0.2, 0.2);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double r1 = rdist(rng);
        const double sigma = std::pow(10.0, logs(rng));
        const double alpha = std::pow(10.0, loga(rng));
        const double gd = dn_multiplier(PotentialProfile(r1, sigma)).lambda + gshift(rng);
        const double an = coreshell::inverse::tikhonov_grad(sigma, 1.0, gd, alpha, r1);
        const double h = 1e-6 * std::max(1.0, sigma);
        const double cd = (coreshell::inverse::tikhonov_value(sigma + h, 1.0, gd, alpha, r1) -
                           coreshell::inverse::tikhonov_value(sigma - h, 1.0, gd, alpha, r1)) /
                          (2.0 * h);
        const double rel = std::abs(an - cd) / std::max(std::abs(an), std::abs(cd));
        worst = std::max(worst, rel);
        out.require(rel <= 1e-6, "gradient mismatch " + fmt(rel) + " at point " +
                                     std::to_string(i) + " (sigma=" + fmt(sigma) + ")");
    }
    const double dt = seconds_since(t0);
    out.require(dt < 1.0, "runtime " + fmt(dt) + "s over 1s");
    if (out.pass) out.detail << "worst rel diff " << fmt(worst) << ", " << fmt(dt) << "s";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
    }
    Outcome (*criteria[8])() = {criterion1, criterion2, criterion3, criterion4,
                                criterion5, criterion6, criterion7, criterion8};
    const char* names[8] = {
        "table-3 reproduction",          "table-4 reproduction",
        "camouflage roots",              "noisy-recovery ensembles",
        "identity suite",                "uniqueness as injectivity",
        "homogeneous-limit consistency", "gradient check",
    };
    int failures = 0;
    for (int c = 1; c <= 8; ++c) {
        if (only != 0 && c != only) continue;
        const Outcome out = criteria[c - 1]();
        std::cout << "criterion " << c << " (" << names[c - 1] << "): "
                  << (out.pass ? "PASS" : "FAIL");
        if (!out.detail.str().empty()) std::cout << " -- " << out.detail.str();
        std::cout << '\n';
        failures += !out.pass;
    }
    return failures;
}
