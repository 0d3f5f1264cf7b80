#include "coreshell/fdsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "coreshell/errors.hpp"

namespace coreshell::fdsolver {
namespace {

struct Tridiagonal {
    std::vector<double> lower;  // lower[i] multiplies psi_{i-1}
    std::vector<double> diag;
    std::vector<double> upper;  // upper[i] multiplies psi_{i+1}
    std::vector<double> rhs;
};

int aligned_interface_index(double r1, int n) {
    const double exact = r1 * n;
    const double nearest = std::round(exact);
    if (std::abs(exact - nearest) > 1e-9) {
        throw GridAlignmentError("r1 = " + std::to_string(r1) + " does not align with N = " +
                                 std::to_string(n) + " (r1*N = " + std::to_string(exact) + ")");
    }
    return static_cast<int>(nearest);
}

// istar < 0 assembles the homogeneous disk system (coefficient 1 everywhere).
Tridiagonal assemble(double f, double sigma1, int istar, int n,
                     const std::optional<double>& pin_center) {
    const double dr = 1.0 / n;
    const double inv_sigma = 1.0 / sigma1;
    // istar == 0 can only happen for r1 below the alignment tolerance; the
    // core is then empty and the whole grid is shell.
    const double c_core = (istar >= 1) ? inv_sigma : 1.0;
    Tridiagonal m;
    m.lower.assign(n + 1, 0.0);
    m.diag.assign(n + 1, 0.0);
    m.upper.assign(n + 1, 0.0);
    m.rhs.assign(n + 1, 0.0);

    if (pin_center) {
        m.diag[0] = 1.0;
        m.rhs[0] = *pin_center;
    } else {
        // limiting equation 2 psi''(0) = c psi(0) with ghost node psi_{-1} = psi_1
        m.diag[0] = -4.0 / (dr * dr) - c_core;
        m.upper[0] = 4.0 / (dr * dr);
    }

    const bool use_interface = istar > 0 && sigma1 != 1.0;
    for (int i = 1; i < n; ++i) {
        if (use_interface && i == istar) {
            m.lower[i] = sigma1;
            m.diag[i] = -(sigma1 + 1.0);
            m.upper[i] = 1.0;
            continue;
        }
        const double r = i * dr;
        const double c = (istar >= 0 && i < istar) ? inv_sigma : 1.0;
        const double rp = (r + 0.5 * dr) / (r * dr * dr);
        const double rm = (r - 0.5 * dr) / (r * dr * dr);
        m.lower[i] = rm;
        m.diag[i] = -(rp + rm) - c;
        m.upper[i] = rp;
    }
    m.diag[n] = 1.0;
    m.rhs[n] = f;
    return m;
}

std::vector<double> thomas_solve(Tridiagonal m) {
    const int n = static_cast<int>(m.diag.size());
    for (int i = 1; i < n; ++i) {
        const double pivot = m.diag[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw SolverError("tridiagonal elimination hit a zero pivot at row " +
                              std::to_string(i - 1));
        }
        const double w = m.lower[i] / pivot;
        m.diag[i] -= w * m.upper[i - 1];
        m.rhs[i] -= w * m.rhs[i - 1];
    }
    if (m.diag[n - 1] == 0.0 || !std::isfinite(m.diag[n - 1])) {
        throw SolverError("singular tridiagonal system");
    }
    std::vector<double> x(n);
    x[n - 1] = m.rhs[n - 1] / m.diag[n - 1];
    for (int i = n - 2; i >= 0; --i) {
        x[i] = (m.rhs[i] - m.upper[i] * x[i + 1]) / m.diag[i];
    }
    return x;
}

FdSolution solve_assembled(double f, double sigma1, int istar, int n,
                           const std::optional<double>& pin_center) {
    if (n < 10) {
        throw DomainError("N must be at least 10, got " + std::to_string(n));
    }
    Tridiagonal m = assemble(f, sigma1, istar, n, pin_center);
    FdSolution sol;
    sol.grid = {n, 1.0 / n, istar};
    sol.values = thomas_solve(std::move(m));
    sol.values[n] = f;  // Dirichlet row, exact by construction
    for (double v : sol.values) {
        if (!std::isfinite(v)) throw SolverError("non-finite value in FD solution");
    }
    const double bound = std::abs(f) + 1e-8;
    for (double v : sol.values) {
        if (std::abs(v) > bound) {
            throw SolverError("FD solution violates the maximum-principle bound");
        }
    }
    sol.neumann = (sol.values[n] - sol.values[n - 1]) * n;
    return sol;
}

}  // namespace

FdSolution solve_fd(double f, const dnmap::PotentialProfile& profile, int n_intervals,
                    std::optional<double> pin_center) {
    if (!std::isfinite(f)) throw DomainError("f must be finite");
    if (pin_center && !std::isfinite(*pin_center)) {
        throw DomainError("pin-center value must be finite");
    }
    const int istar = aligned_interface_index(profile.r1, n_intervals);
    return solve_assembled(f, profile.sigma1, istar, n_intervals, pin_center);
}

FdSolution solve_fd_disk(double f, int n_intervals) {
    if (!std::isfinite(f)) throw DomainError("f must be finite");
    return solve_assembled(f, 1.0, -1, n_intervals, std::nullopt);
}

double neumann_forward_difference(const FdSolution& solution) {
    const int n = solution.grid.n_intervals;
    return (solution.values[n] - solution.values[n - 1]) / solution.grid.step;
}

double scaled_residual(const FdSolution& solution, double f,
                       const dnmap::PotentialProfile& profile,
                       std::optional<double> pin_center) {
    const int n = solution.grid.n_intervals;
    const Tridiagonal m = assemble(f, profile.sigma1, solution.grid.interface_index, n,
                                   pin_center);
    const auto& x = solution.values;
    double worst = 0.0;
    for (int i = 0; i <= n; ++i) {
        double r = m.diag[i] * x[i] - m.rhs[i];
        if (i > 0) r += m.lower[i] * x[i - 1];
        if (i < n) r += m.upper[i] * x[i + 1];
        const double scale = std::max({std::abs(m.diag[i]), std::abs(i > 0 ? m.lower[i] : 0.0),
                                       std::abs(i < n ? m.upper[i] : 0.0), 1.0});
        worst = std::max(worst, std::abs(r) / scale);
    }
    return worst;
}

void write_csv(const FdSolution& solution, std::ostream& out) {
    out << "r,psi\n";
    out.precision(17);
    for (int i = 0; i <= solution.grid.n_intervals; ++i) {
        out << i * solution.grid.step << ',' << solution.values[i] << '\n';
    }
}

}  // namespace coreshell::fdsolver
