#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "natanzon/potential.hpp"

// Brute-force finite-difference verifier for the radial problem
// -psi'' + V psi = eps psi with Dirichlet walls at the grid ends.

namespace natanzon::oracle {

// n_points interior nodes r_min + (i+1) * spacing, i = 0..n_points-1, with
// spacing = (r_max - r_min) / (n_points + 1). The walls themselves carry no
// unknown, so a half-line grid may start exactly at the domain end r = 0.
struct Grid {
    double r_min = 0.0;
    double r_max = 1.0;
    std::size_t n_points = 200;

    double spacing() const { return (r_max - r_min) / static_cast<double>(n_points + 1); }
    double node(std::size_t i) const { return r_min + static_cast<double>(i + 1) * spacing(); }
    std::vector<double> nodes() const;
    // Same walls, spacing halved: 2 n + 1 interior nodes.
    Grid refined() const { return {r_min, r_max, 2 * n_points + 1}; }
    // Throws DomainError unless n_points >= 200 and r_min < r_max (finite).
    void validate() const;
};

struct TridiagonalSystem {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;  // size n - 1, symmetric
    double spacing = 0.0;
};

// -d^2/dr^2 + V with the three-point stencil: diag 2/dr^2 + V(r_i), off -1/dr^2.
TridiagonalSystem fd_hamiltonian(const CoordinateMap& map, const Grid& grid);
// Same stencil with V sampled by the caller (one value per interior node).
TridiagonalSystem fd_hamiltonian(std::span<const double> potential, const Grid& grid);

// k smallest eigenvalues by multi-shift Sturm bisection, each bracketed to
// `width` absolute.
std::vector<double> lowest_eigenvalues(const TridiagonalSystem& system, std::size_t k, double width = 1e-10);

// Number of eigenvalues strictly below `shift`.
std::size_t count_below(const TridiagonalSystem& system, double shift);

// Grid whose walls sit where the WKB decay exponent int sqrt(V - eps_max) dr,
// measured outward from the classically allowed region, reaches `decay`
// (e^{-36} ~ 2e-16), or at a finite end of the r-domain. Throws DomainError
// when V never drops below eps_max.
Grid auto_grid(const CoordinateMap& map, double eps_max, std::size_t n_points, double decay = 36.0);

struct ComparisonRow {
    int n = 0;
    double eps_quartic = 0.0;
    double eps_fd = 0.0;          // on the requested grid
    double eps_fd_fine = 0.0;     // on the refined grid
    double eps_richardson = 0.0;  // (4 fine - coarse) / 3
    double discretization = 0.0;  // estimated |eps_fd - limit| = 4/3 |fine - coarse|
    double diff = 0.0;            // |eps_quartic - eps_fd|
    double tolerance = 0.0;       // 1e-9 + 2 * discretization + bisection width
    bool mismatch = false;
};

struct SpectrumComparison {
    std::vector<ComparisonRow> rows;
    std::size_t quartic_levels = 0;   // non-threshold quartic levels up to n_max
    std::size_t fd_levels_below = 0;  // FD eigenvalues below the continuum edge (if any)
    bool any_mismatch = false;
};

// Compares the quartic levels n = 0..n_max with FD eigenvalues on `grid` and
// on grid.refined(). Threshold levels are not normalizable and are skipped.
SpectrumComparison compare_spectrum(const NatanzonParams& params, const CoordinateMap& map, int n_max,
                                    const Grid& grid);

// Least-squares slope of log|eps_fd(k) - exact| against log(spacing) over
// `grids` successive refinements of `grid` for eigenvalue index `level`.
double richardson_slope(const CoordinateMap& map, const Grid& grid, std::size_t level, double exact,
                        std::size_t grids = 4);

// Lowest edge of the continuous spectrum: min over the infinite ends of the
// r-domain of lim V (+inf when both ends confine).
double continuum_threshold(const NatanzonParams& params, const CoordinateMap& map);

// [(H - eps)^{-1}]_{ij} / dr at the nodes nearest r and r_prime: the discrete
// counterpart of i G(r, r').
struct ResolventValue {
    double r = 0.0;
    double r_prime = 0.0;
    double value = 0.0;
};
ResolventValue fd_resolvent(const TridiagonalSystem& system, const Grid& grid, double r, double r_prime,
                            double epsilon);

} // namespace natanzon::oracle
