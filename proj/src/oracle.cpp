#include "natanzon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "natanzon/errors.hpp"
#include "natanzon/kernels/kernels.hpp"
#include "natanzon/spectrum.hpp"

namespace natanzon::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> potential_on_grid(const CoordinateMap& map, const Grid& grid) {
    const std::vector<double> r = grid.nodes();
    std::vector<double> v(r.size());
    potential_of_r(map, r, v);
    return v;
}

// Every 2^levels-th node of a grid refined `levels` times is a node of the original.
std::vector<double> subsample(const std::vector<double>& fine, std::size_t levels) {
    const std::size_t stride = std::size_t{1} << levels;
    std::vector<double> out;
    for (std::size_t k = stride - 1; k < fine.size(); k += stride) out.push_back(fine[k]);
    return out;
}

std::size_t nearest_node(const Grid& grid, double r) {
    const double k = std::round((r - grid.r_min) / grid.spacing()) - 1.0;
    if (k < 0.0 || k >= static_cast<double>(grid.n_points))
        throw DomainError("fd_resolvent: r = " + std::to_string(r) + " is not inside the grid");
    return static_cast<std::size_t>(k);
}

} // namespace

std::vector<double> Grid::nodes() const {
    std::vector<double> out(n_points);
    for (std::size_t i = 0; i < n_points; ++i) out[i] = node(i);
    return out;
}

void Grid::validate() const {
    if (n_points < 200) throw DomainError("Grid: n_points must be >= 200");
    if (!std::isfinite(r_min) || !std::isfinite(r_max) || !(r_min < r_max))
        throw DomainError("Grid: need finite r_min < r_max");
}

TridiagonalSystem fd_hamiltonian(std::span<const double> potential, const Grid& grid) {
    grid.validate();
    if (potential.size() != grid.n_points) throw DomainError("fd_hamiltonian: one potential value per node expected");
    const double dr = grid.spacing();
    const double inv = 1.0 / (dr * dr);
    TridiagonalSystem sys;
    sys.spacing = dr;
    sys.diagonal.resize(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) sys.diagonal[i] = 2.0 * inv + potential[i];
    sys.off_diagonal.assign(grid.n_points - 1, -inv);
    return sys;
}

TridiagonalSystem fd_hamiltonian(const CoordinateMap& map, const Grid& grid) {
    grid.validate();
    return fd_hamiltonian(potential_on_grid(map, grid), grid);
}

std::size_t count_below(const TridiagonalSystem& system, double shift) {
    std::vector<double> off_sq(system.off_diagonal.size());
    double max_sq = 1.0;
    for (std::size_t i = 0; i < off_sq.size(); ++i) {
        off_sq[i] = system.off_diagonal[i] * system.off_diagonal[i];
        max_sq = std::max(max_sq, off_sq[i]);
    }
    const double shifts[1] = {shift};
    int counts[1] = {0};
    kernels::sturm_counts(system.diagonal, off_sq, shifts, counts, std::numeric_limits<double>::min() * max_sq);
    return static_cast<std::size_t>(counts[0]);
}

std::vector<double> lowest_eigenvalues(const TridiagonalSystem& system, std::size_t k, double width) {
    const std::size_t n = system.diagonal.size();
    if (k < 1) throw DomainError("lowest_eigenvalues: k must be >= 1");
    if (system.off_diagonal.size() + 1 != n) throw DomainError("lowest_eigenvalues: inconsistent system");
    k = std::min(k, n);

    std::vector<double> off_sq(n - 1);
    double max_sq = 1.0;
    double lo = kInf;
    double hi = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? std::abs(system.off_diagonal[i - 1]) : 0.0;
        const double right = i + 1 < n ? std::abs(system.off_diagonal[i]) : 0.0;
        lo = std::min(lo, system.diagonal[i] - left - right);
        hi = std::max(hi, system.diagonal[i] + left + right);
        if (i + 1 < n) {
            off_sq[i] = system.off_diagonal[i] * system.off_diagonal[i];
            max_sq = std::max(max_sq, off_sq[i]);
        }
    }
    const double pivmin = std::numeric_limits<double>::min() * max_sq;
    const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    std::vector<double> lower(k, lo - pad);
    std::vector<double> upper(k, hi + pad);
    std::vector<double> shifts(k);
    std::vector<int> counts(k);

    // All k bisections advance together: one multi-shift Sturm sweep per step.
    for (int iter = 0; iter < 200; ++iter) {
        bool done = true;
        for (std::size_t j = 0; j < k; ++j) {
            shifts[j] = 0.5 * (lower[j] + upper[j]);
            if (upper[j] - lower[j] > width) done = false;
        }
        if (done) break;
        kernels::sturm_counts(system.diagonal, off_sq, shifts, counts, pivmin);
        for (std::size_t j = 0; j < k; ++j) {
            if (upper[j] - lower[j] <= width) continue;
            if (static_cast<std::size_t>(counts[j]) > j)
                upper[j] = shifts[j];
            else
                lower[j] = shifts[j];
        }
    }
    std::vector<double> out(k);
    for (std::size_t j = 0; j < k; ++j) out[j] = 0.5 * (lower[j] + upper[j]);
    return out;
}

double continuum_threshold(const NatanzonParams& p, const CoordinateMap& map) {
    double edge = kInf;
    if (!std::isfinite(map.r_lo()) && map.h_domain().lo == 0.0 && p.c0() != 0.0) edge = std::min(edge, p.eta() / p.c0());
    if (!std::isfinite(map.r_hi())) {
        if (p.sigma2() != 0.0)
            edge = std::min(edge, p.g2() / p.sigma2());
        else if (p.g2() < 0.0)
            edge = -kInf;
        else if (p.g2() == 0.0)
            edge = std::min(edge, p.g1() / p.sigma1());
    }
    return edge;
}

Grid auto_grid(const CoordinateMap& map, double eps_max, std::size_t n_points, double decay) {
    const auto node_r = map.node_r();
    const auto node_h = map.node_h();
    const NatanzonParams& p = map.params();

    std::size_t first = node_r.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < node_r.size(); ++i) {
        if (potential_of_h(p, node_h[i]) < eps_max) {
            first = std::min(first, i);
            last = i;
        }
    }
    if (first == node_r.size()) throw DomainError("auto_grid: V never drops below " + std::to_string(eps_max));

    const double a = node_r[first > 0 ? first - 1 : 0];
    const double b = node_r[std::min(last + 1, node_r.size() - 1)];
    const double max_step = std::max(b - a, 1.0) / 50.0;

    // March outward until the accumulated decay exponent reaches `decay`.
    auto march = [&](double start, double direction, double wall) {
        double r = start;
        double exponent = 0.0;
        for (int step = 0; step < 200000; ++step) {
            const double v = potential_of_r(map, r);
            const double kappa = std::sqrt(std::max(v - eps_max, 0.0));
            const double dr = (kappa > 0.0) ? std::min(max_step, 0.1 / kappa) : max_step;
            const double next = r + direction * dr;
            if (direction > 0 ? next >= wall : next <= wall) return wall;
            exponent += kappa * dr;
            r = next;
            if (exponent >= decay) return r;
        }
        throw NumericalError("auto_grid: decay exponent not reached");
    };

    Grid grid;
    grid.r_min = std::isfinite(map.r_lo()) && first == 0 ? map.r_lo() : march(a, -1.0, map.r_lo());
    grid.r_max = std::isfinite(map.r_hi()) && last + 1 == node_r.size() ? map.r_hi() : march(b, 1.0, map.r_hi());
    grid.n_points = n_points;
    grid.validate();
    return grid;
}

SpectrumComparison compare_spectrum(const NatanzonParams& params, const CoordinateMap& map, int n_max,
                                    const Grid& grid) {
    grid.validate();
    constexpr double kWidth = 1e-10;
    SpectrumComparison report;

    std::vector<EnergyLevel> levels;
    for (const EnergyLevel& level : spectrum(params, n_max))
        if (!level.threshold) levels.push_back(level);
    report.quartic_levels = levels.size();

    const Grid fine = grid.refined();
    const std::vector<double> v_fine = potential_on_grid(map, fine);
    const TridiagonalSystem sys_fine = fd_hamiltonian(v_fine, fine);
    const TridiagonalSystem sys = fd_hamiltonian(subsample(v_fine, 1), grid);

    const double edge = continuum_threshold(params, map);
    if (std::isfinite(edge)) report.fd_levels_below = count_below(sys, edge);
    if (levels.empty()) return report;

    const std::vector<double> coarse_eigs = lowest_eigenvalues(sys, levels.size(), kWidth);
    const std::vector<double> fine_eigs = lowest_eigenvalues(sys_fine, levels.size(), kWidth);
    for (std::size_t j = 0; j < levels.size(); ++j) {
        ComparisonRow row;
        row.n = levels[j].n;
        row.eps_quartic = levels[j].epsilon;
        row.eps_fd = coarse_eigs[j];
        row.eps_fd_fine = fine_eigs[j];
        row.eps_richardson = (4.0 * fine_eigs[j] - coarse_eigs[j]) / 3.0;
        row.discretization = 4.0 / 3.0 * std::abs(fine_eigs[j] - coarse_eigs[j]);
        row.diff = std::abs(row.eps_quartic - row.eps_fd);
        row.tolerance = 1e-9 + 2.0 * row.discretization + 2.0 * kWidth;
        row.mismatch = row.diff > row.tolerance;
        report.any_mismatch = report.any_mismatch || row.mismatch;
        report.rows.push_back(row);
    }
    return report;
}

double richardson_slope(const CoordinateMap& map, const Grid& grid, std::size_t level, double exact,
                        std::size_t grids) {
    if (grids < 2) throw DomainError("richardson_slope: need at least two grids");
    grid.validate();
    Grid finest = grid;
    for (std::size_t g = 1; g < grids; ++g) finest = finest.refined();
    const std::vector<double> v_finest = potential_on_grid(map, finest);

    std::vector<double> xs;
    std::vector<double> ys;
    Grid current = grid;
    for (std::size_t g = 0; g < grids; ++g) {
        const TridiagonalSystem sys = fd_hamiltonian(subsample(v_finest, grids - 1 - g), current);
        const double eig = lowest_eigenvalues(sys, level + 1, 1e-13)[level];
        xs.push_back(std::log(current.spacing()));
        ys.push_back(std::log(std::abs(eig - exact)));
        current = current.refined();
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ResolventValue fd_resolvent(const TridiagonalSystem& system, const Grid& grid, double r, double r_prime,
                            double epsilon) {
    const std::size_t n = system.diagonal.size();
    if (n != grid.n_points) throw DomainError("fd_resolvent: system and grid disagree");
    const std::size_t i = nearest_node(grid, r);
    const std::size_t j = nearest_node(grid, r_prime);

    // Thomas algorithm on (T - eps) x = e_j.
    std::vector<double> c(n, 0.0);
    std::vector<double> d(n, 0.0);
    double prev_c = 0.0;
    double prev_d = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double sub = k > 0 ? system.off_diagonal[k - 1] : 0.0;
        const double sup = k + 1 < n ? system.off_diagonal[k] : 0.0;
        const double denom = (system.diagonal[k] - epsilon) - sub * prev_c;
        if (denom == 0.0) throw NumericalError("fd_resolvent: zero pivot");
        c[k] = sup / denom;
        d[k] = ((k == j ? 1.0 : 0.0) - sub * prev_d) / denom;
        prev_c = c[k];
        prev_d = d[k];
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) x[k] = d[k] - c[k] * x[k + 1];

    return {grid.node(i), grid.node(j), x[i] / system.spacing};
}

} // namespace natanzon::oracle
