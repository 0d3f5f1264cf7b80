#include "coreshell/camouflage.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "coreshell/errors.hpp"
#include "coreshell/fdsolver.hpp"
#include "coreshell/specfun.hpp"

namespace coreshell::camouflage {

using dnmap::PotentialProfile;
using specfun::bessel_i0;
using specfun::bessel_i1;

namespace {

void check_inputs(double r1, double sigma1, double r2) {
    PotentialProfile probe1(r1, sigma1);  // validates r1, sigma1
    if (!(r2 > 0.0 && r2 < 1.0) || !std::isfinite(r2)) {
        throw DomainError("r2 must lie in (0, 1), got " + std::to_string(r2));
    }
}

// Bracketing root refinement: bisection with a secant candidate whenever it
// falls safely inside the current bracket. The bracket never widens.
double refine_root(const std::function<double(double)>& fn, double lo, double hi,
                   double flo, double fhi) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    for (int iter = 0; iter < 200; ++iter) {
        const double width = hi - lo;
        const double mid = 0.5 * (lo + hi);
        if (width <= 1e-13 * std::abs(mid)) break;
        double x = mid;
        if (fhi != flo) {
            const double secant = (lo * fhi - hi * flo) / (fhi - flo);
            if (secant > lo + 0.05 * width && secant < hi - 0.05 * width) x = secant;
        }
        const double fx = fn(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> scan_grid() {
    std::vector<double> grid(kScanPoints);
    const double ratio = std::log(kScanHigh / kScanLow);
    for (int k = 0; k < kScanPoints; ++k) {
        grid[k] = kScanLow * std::exp(ratio * k / (kScanPoints - 1.0));
    }
    return grid;
}

}  // namespace

double det_d(double r1, double sigma1, double r2, double sigma2) {
    check_inputs(r1, sigma1, r2);
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
        throw DomainError("sigma2 must be positive, got " + std::to_string(sigma2));
    }
    const double s1 = std::sqrt(sigma1);
    const double s2 = std::sqrt(sigma2);
    double m[3][3] = {
        {dnmap::jaeger_d10(r1, r2), s1 * bessel_i1(r1 / s1), dnmap::jaeger_d11(r1, r2)},
        {bessel_i0(r2 / s2), 0.0, s2 * bessel_i1(r2 / s2)},
        {dnmap::jaeger_d(r1, r2), bessel_i0(r1 / s1), dnmap::jaeger_d01(r1, r2)},
    };
    for (auto& row : m) {
        const double scale = std::max({std::abs(row[0]), std::abs(row[1]), std::abs(row[2])});
        if (scale > 0.0) {
            for (double& v : row) v /= scale;
        }
    }
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double find_sigma2(double r1, double sigma1, double r2, std::pair<double, double> bracket) {
    check_inputs(r1, sigma1, r2);
    const auto fn = [&](double s2) { return det_d(r1, sigma1, r2, s2); };
    double lo = bracket.first, hi = bracket.second;
    if (lo > hi) std::swap(lo, hi);
    if (lo > 0.0 && hi > lo) {
        const double flo = fn(lo), fhi = fn(hi);
        if (flo == 0.0) return lo;
        if (fhi == 0.0) return hi;
        if ((flo < 0.0) != (fhi < 0.0)) return refine_root(fn, lo, hi, flo, fhi);
    }
    const auto roots = find_all_sigma2(r1, sigma1, r2);
    return roots.front();
}

std::vector<double> find_all_sigma2(double r1, double sigma1, double r2) {
    check_inputs(r1, sigma1, r2);
    const auto fn = [&](double s2) { return det_d(r1, sigma1, r2, s2); };
    const auto grid = scan_grid();
    std::vector<double> f(grid.size());
    for (size_t k = 0; k < grid.size(); ++k) f[k] = fn(grid[k]);

    std::vector<double> roots;
    for (size_t k = 0; k + 1 < grid.size(); ++k) {
        if (f[k] == 0.0) {
            roots.push_back(grid[k]);
        } else if (f[k + 1] != 0.0 && (f[k] < 0.0) != (f[k + 1] < 0.0)) {
            roots.push_back(refine_root(fn, grid[k], grid[k + 1], f[k], f[k + 1]));
        }
    }
    if (f.back() == 0.0) roots.push_back(grid.back());
    if (roots.empty()) {
        double fmin = f[0], fmax = f[0];
        for (double v : f) {
            fmin = std::min(fmin, v);
            fmax = std::max(fmax, v);
        }
        std::ostringstream msg;
        msg << "no sign change of det_d for sigma2 in (" << kScanLow << ", " << kScanHigh
            << "); determinant stayed in [" << fmin << ", " << fmax << "]";
        throw NoRootError(msg.str());
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

CamouflagePair build_pair(double r1, double sigma1, double r2) {
    const double sigma2 = find_sigma2(r1, sigma1, r2, {0.0, 0.0});
    PotentialProfile p(r1, sigma1);
    PotentialProfile q(r2, sigma2);
    return {p, q, det_d(r1, sigma1, r2, sigma2), dnmap::dn_distance(p, q)};
}

PairVerification verify_pair(const CamouflagePair& pair, double f,
                             const std::vector<int>& fd_check_ns) {
    PairVerification v;
    v.dn_residual =
        std::abs(dnmap::dn_multiplier(pair.p).apply(f) - dnmap::dn_multiplier(pair.q).apply(f));
    v.fd_residuals.reserve(fd_check_ns.size());
    for (int n : fd_check_ns) {
        const double gp = fdsolver::solve_fd(f, pair.p, n).neumann;
        const double gq = fdsolver::solve_fd(f, pair.q, n).neumann;
        v.fd_residuals.push_back(std::abs(gp - gq));
    }
    return v;
}

}  // namespace coreshell::camouflage
