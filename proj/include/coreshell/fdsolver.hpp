#pragma once

// Finite-difference solution of the core-shell transmission problem on a
// uniform radial grid, and Neumann extraction by forward difference.

#include <iosfwd>
#include <optional>
#include <vector>

#include "coreshell/dnmap.hpp"

namespace coreshell::fdsolver {

struct RadialGrid {
    int n_intervals;      // N >= 10
    double step;          // 1/N
    int interface_index;  // i* with i* * step == r1 (or -1 for the disk)
};

struct FdSolution {
    RadialGrid grid;
    std::vector<double> values;  // psi_0 .. psi_N
    double neumann;              // (psi_N - psi_{N-1}) / step
};

// Solves the transmission problem with boundary datum f on an N-interval grid.
//
// Interior rows use the conservative second-order stencil for r^{-1}(r psi')';
// the interface row i* is replaced by the one-sided flux balance
//   sigma1 (psi_{i*} - psi_{i*-1}) = psi_{i*+1} - psi_{i*}
// (skipped when sigma1 == 1: the jump is vacuous and the PDE row applies).
// The center row defaults to the regularity closure 4(psi_1 - psi_0)/dr^2 =
// sigma1^{-1} psi_0; passing pin_center instead fixes psi_0 to that value.
//
// Throws GridAlignmentError unless r1*N is within 1e-9 of an integer.
FdSolution solve_fd(double f, const dnmap::PotentialProfile& profile, int n_intervals,
                    std::optional<double> pin_center = std::nullopt);

// Homogeneous-disk problem on the same kind of grid (no interface row).
FdSolution solve_fd_disk(double f, int n_intervals);

// g = (psi(1) - psi(1 - dr)) / dr.
double neumann_forward_difference(const FdSolution& solution);

// Max-norm residual of the assembled linear system at `solution.values`,
// with each row normalized by its max coefficient magnitude.
double scaled_residual(const FdSolution& solution, double f,
                       const dnmap::PotentialProfile& profile,
                       std::optional<double> pin_center = std::nullopt);

// Two columns "r,psi" with full double precision.
void write_csv(const FdSolution& solution, std::ostream& out);

}  // namespace coreshell::fdsolver
