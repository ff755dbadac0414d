#include "natanzon/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <numbers>
#include <random>
#include <sstream>

#include "natanzon/algebra_check.hpp"
#include "natanzon/errors.hpp"
#include "natanzon/green.hpp"
#include "natanzon/oracle.hpp"
#include "natanzon/specfun.hpp"
#include "natanzon/spectrum.hpp"

namespace natanzon::verify {

namespace {

double rel(double value, double reference) {
    if (value == reference) return 0.0;
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

// Uniform double in [lo, hi) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : rng_(seed) {}
    double operator()(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 rng_;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

CriterionResult make(int id, const char* name, double metric, double threshold, std::string detail) {
    CriterionResult out;
    out.id = id;
    out.name = name;
    out.metric = metric;
    out.threshold = threshold;
    out.passed = std::isfinite(metric) && metric <= threshold;
    out.detail = std::move(detail);
    return out;
}

struct NamedCase {
    const char* name;
    SpecialCase kind;
    NatanzonParams params;
    int n_max;  // highest level compared against the FD oracle
};

std::vector<NamedCase> special_cases() {
    return {{"oscillator", SpecialCase::Oscillator, oscillator_reference(), 2},
            {"coulomb", SpecialCase::Coulomb, coulomb_reference(), 1},
            {"morse", SpecialCase::Morse, morse_reference(), 5}};
}

double continuum_edge(const NatanzonParams& p) {
    return std::min(p.g2() / p.sigma2(), p.eta() / p.c0());
}

// Number of levels of a General set kept for FD comparison: those at least
// 0.5 below the continuum edge, at most three.
int general_n_max(const NatanzonParams& p) {
    const double edge = continuum_edge(p);
    int n_max = -1;
    for (const EnergyLevel& level : spectrum(p, 2)) {
        if (level.epsilon > edge - 0.5) break;
        n_max = level.n;
    }
    return n_max;
}

// Fourth-order central difference.
template <class F>
double derivative(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

} // namespace

bool Report::passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

NatanzonParams oscillator_reference() { return NatanzonParams::oscillator(0.0, 1.0, 1.0, 0.25); }
NatanzonParams coulomb_reference() { return NatanzonParams::coulomb(-2.0, 0.0, 1.0, 1.0); }
NatanzonParams morse_reference() { return NatanzonParams::morse(-6.0, 1.0, 1.0, 0.0); }

std::vector<NatanzonParams> random_general_params(std::uint64_t seed, int count) {
    Uniform uniform(seed);
    std::vector<NatanzonParams> out;
    for (int attempt = 0; static_cast<int>(out.size()) < count && attempt < 100000; ++attempt) {
        const double sigma1 = uniform(0.2, 1.5);
        const double sigma2 = uniform(0.2, 1.5);
        const double c0 = uniform(0.3, 1.5);
        const double g2 = uniform(0.5, 3.0);
        const double eta = uniform(1.0, 6.0);
        const double g1 = uniform(-14.0, -6.0);
        const NatanzonParams p(g1, g2, sigma1, sigma2, c0, eta);
        const auto ground = solve_level(p, 0);
        if (ground && !ground->threshold && ground->epsilon <= continuum_edge(p) - 0.5) out.push_back(p);
    }
    if (static_cast<int>(out.size()) < count) throw NumericalError("random_general_params: too few bound sets");
    return out;
}

CriterionResult special_case_spectra(const Options& options) {
    double worst = 0.0;
    int compared = 0;
    std::ostringstream detail;
    auto textbook = [](SpecialCase kind, int n) -> std::optional<double> {
        switch (kind) {
        case SpecialCase::Oscillator: return 4.0 * n + 3.0;
        case SpecialCase::Coulomb: return -1.0 / (4.0 * (n + 1.0) * (n + 1.0));
        case SpecialCase::Morse: return n == 0 ? std::optional<double>(-4.0) : std::nullopt;
        default: return std::nullopt;
        }
    };
    for (const NamedCase& c : special_cases()) {
        for (int n = 0; n <= 5; ++n) {
            std::optional<double> closed;
            try {
                closed = closed_form_spectrum(c.kind, c.params, n);
            } catch (const DomainError&) {
            }
            const auto level = solve_level(c.params, n);
            if (closed.has_value() != level.has_value()) {
                detail << c.name << " n=" << n << ": closed form and solver disagree on existence; ";
                worst = std::numeric_limits<double>::infinity();
                continue;
            }
            if (!level) continue;
            worst = std::max(worst, rel(level->epsilon, *closed));
            if (auto t = textbook(c.kind, n)) worst = std::max(worst, rel(level->epsilon, *t));
            ++compared;
        }
    }
    detail << compared << " levels vs closed forms, max rel err " << fmt(worst);
    return make(1, "special-case spectra", worst, 1e-10 * options.tolerance_scale, detail.str());
}

CriterionResult fd_equivalence(const Options& options) {
    struct Job {
        std::string name;
        NatanzonParams params;
        int n_max;
        bool count_check;
    };
    std::vector<Job> jobs;
    for (const NamedCase& c : special_cases()) jobs.push_back({c.name, c.params, c.n_max, c.kind == SpecialCase::Morse});
    const auto general = random_general_params(options.seed, options.random_sets);
    for (std::size_t i = 0; i < general.size(); ++i)
        jobs.push_back({"general#" + std::to_string(i), general[i], general_n_max(general[i]), false});

    const double diff_tol = 1e-3 * options.tolerance_scale;
    const double slope_tol = 0.3 * options.tolerance_scale;
    double worst_diff = 0.0;
    double worst_slope_dev = 0.0;
    double slope_min = 1e300;
    double slope_max = -1e300;
    bool flags_ok = true;
    std::ostringstream detail;
    for (const Job& job : jobs) {
        const CoordinateMap map = build_change_of_variable(job.params);
        std::vector<EnergyLevel> levels;
        for (const EnergyLevel& level : spectrum(job.params, job.n_max))
            if (!level.threshold) levels.push_back(level);
        if (levels.empty()) {
            detail << job.name << ": no levels; ";
            flags_ok = false;
            continue;
        }
        const oracle::Grid grid = oracle::auto_grid(map, levels.back().epsilon, 4000);
        const oracle::SpectrumComparison cmp = oracle::compare_spectrum(job.params, map, job.n_max, grid);
        for (const auto& row : cmp.rows) worst_diff = std::max(worst_diff, row.diff);
        if (cmp.any_mismatch) {
            detail << job.name << ": mismatch beyond discretization estimate; ";
            flags_ok = false;
        }
        if (job.count_check && cmp.fd_levels_below != cmp.quartic_levels) {
            detail << job.name << ": " << cmp.fd_levels_below << " FD levels below threshold vs " << cmp.quartic_levels
                   << " quartic; ";
            flags_ok = false;
        }
        const double slope =
            oracle::richardson_slope(map, oracle::Grid{grid.r_min, grid.r_max, 400}, 0, levels.front().epsilon, 4);
        slope_min = std::min(slope_min, slope);
        slope_max = std::max(slope_max, slope);
        worst_slope_dev = std::max(worst_slope_dev, std::abs(slope - 2.0));
    }
    detail << jobs.size() << " parameter sets, max |diff| " << fmt(worst_diff) << ", convergence slopes in ["
           << fmt(slope_min) << ", " << fmt(slope_max) << "]";
    // Report the diff as the metric; slope and flags gate the verdict too.
    CriterionResult out = make(2, "FD oracle equivalence", worst_diff, diff_tol, detail.str());
    out.passed = out.passed && flags_ok && worst_slope_dev <= slope_tol;
    return out;
}

CriterionResult pole_alignment(const Options& options) {
    double worst = 0.0;
    int count = 0;
    auto check = [&](const NatanzonParams& p) {
        for (const EnergyLevel& level : spectrum(p, 5)) {
            worst = std::max(worst, pole_check(p, level));
            ++count;
        }
    };
    for (const NamedCase& c : special_cases()) check(c.params);
    for (const NatanzonParams& p : random_general_params(options.seed, options.random_sets)) check(p);
    return make(3, "pole alignment", worst, 1e-8 * options.tolerance_scale,
                std::to_string(count) + " levels, max |gamma_argument + n| " + fmt(worst));
}

CriterionResult integral_identity(const Options& options) {
    double worst = 0.0;
    int count = 0;
    std::string failures;
    for (double x : {0.2, 0.5, 1.0})
        for (double dy : {0.5, 1.0, 2.0})
            for (double gamma : {0.4, 0.75, 1.2})
                for (double p : {0.3, 1.0, 2.0}) {
                    try {
                        worst = std::max(worst, kernel_identity_check(x, x + dy, gamma, p).rel_err);
                    } catch (const NumericalError& e) {
                        worst = std::numeric_limits<double>::infinity();
                        failures += std::string(e.what()) + "; ";
                    }
                    ++count;
                }
    return make(4, "integral identity", worst, 1e-8 * options.tolerance_scale,
                failures + std::to_string(count) + " lattice points, max rel err " + fmt(worst));
}

CriterionResult green_defect(const Options& options) {
    struct Job {
        const char* name;
        NatanzonParams params;
        double epsilon;
        double r_prime;
        double r_lo, r_hi;
    };
    const Job jobs[] = {{"oscillator", oscillator_reference(), 5.0, 1.5, 0.3, 4.0},
                        {"coulomb", coulomb_reference(), -0.15625, 4.0, 0.5, 20.0}};
    constexpr double step = 1e-3;
    double worst_residual = 0.0;
    double worst_jump = 0.0;
    std::ostringstream detail;
    for (const Job& job : jobs) {
        const CoordinateMap map = build_change_of_variable(job.params);
        auto g = [&](double r) { return green_function(job.params, map, r, job.r_prime, job.epsilon).value; };

        double norm = 0.0;
        double residual = 0.0;
        constexpr int samples = 60;
        for (int k = 0; k <= samples; ++k) {
            const double r = job.r_lo + (job.r_hi - job.r_lo) * k / samples;
            if (std::abs(r - job.r_prime) < 2.0 * step) continue;
            const std::complex<double> g0 = g(r);
            const std::complex<double> second = (g(r + step) - 2.0 * g0 + g(r - step)) / (step * step);
            const std::complex<double> lhs = -second + (potential_of_r(map, r) - job.epsilon) * g0;
            norm = std::max(norm, std::abs(g0));
            residual = std::max(residual, std::abs(lhs));
        }
        worst_residual = std::max(worst_residual, residual / norm);

        const double x = job.r_prime;
        const std::complex<double> right = (-3.0 * g(x) + 4.0 * g(x + step) - g(x + 2 * step)) / (2.0 * step);
        const std::complex<double> left = (3.0 * g(x) - 4.0 * g(x - step) + g(x - 2 * step)) / (2.0 * step);
        const std::complex<double> jump = right - left;
        // (H - eps) G = -i delta with H = -d^2/dr^2 + V, so G' jumps by +i.
        const double jump_err = std::abs(jump - std::complex<double>(0.0, 1.0));
        worst_jump = std::max(worst_jump, jump_err);
        detail << job.name << ": jump " << fmt(jump.real()) << (jump.imag() < 0 ? "-" : "+") << fmt(std::abs(jump.imag()))
               << "i; ";
    }
    detail << "max rel homogeneous residual " << fmt(worst_residual) << ", max |jump - i| " << fmt(worst_jump)
           << " (normalization (H - eps) G = delta / i)";
    return make(5, "Green's function defect equations", std::max(worst_residual, worst_jump),
                1e-4 * options.tolerance_scale, detail.str());
}

CriterionResult algebra(const Options& options) {
    const auto comm = algebra::commutator_check();
    const double comm_worst = *std::max_element(comm.begin(), comm.end());

    double bch1 = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double omega = 0.2 + 0.2 * i;
        for (int j = 0; j < 10; ++j) {
            const double frac = -0.9 + 1.8 * j / 9.0;
            const double S = frac * (std::numbers::pi / 2.0 - 0.01) / omega;
            bch1 = std::max(bch1, algebra::bch_check_1(omega, S, options.bch_a_scale));
        }
    }

    Uniform uniform(options.seed ^ 0x9e3779b97f4a7c15ULL);
    double bch2 = 0.0;
    for (int k = 0; k < 100;) {
        const std::complex<double> tau(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        const double c = uniform(-1.5, 1.5);
        if (std::abs(1.0 - std::complex<double>(0.0, 1.0) * tau * c / 2.0) <= 1e-6) continue;
        bch2 = std::max(bch2, algebra::bch_check_2(tau, c));
        ++k;
    }

    const double bch = std::max(bch1, bch2);
    CriterionResult out = make(6, "algebra certification", bch, 1e-12 * options.tolerance_scale,
                               "max commutator residual " + fmt(comm_worst) + ", BCH1 " + fmt(bch1) + ", BCH2 " +
                                   fmt(bch2));
    out.passed = out.passed && comm_worst <= 1e-14 * options.tolerance_scale;
    return out;
}

CriterionResult coordinate_map(const Options& options) {
    struct Job {
        std::string name;
        NatanzonParams params;
        double r_lo, r_hi;
        std::function<double(double)> closed;  // empty for General sets
    };
    std::vector<Job> jobs = {
        {"oscillator", oscillator_reference(), 0.05, 5.0, [](double r) { return r * r; }},
        {"coulomb", coulomb_reference(), 0.05, 20.0, [](double r) { return 2.0 * r; }},
        {"morse", morse_reference(), -4.0, 3.0, [](double r) { return std::exp(2.0 * r); }},
    };
    const auto general = random_general_params(options.seed, 3);
    for (std::size_t i = 0; i < general.size(); ++i)
        jobs.push_back({"general#" + std::to_string(i), general[i], -3.0, 3.0, {}});

    Uniform uniform(options.seed + 7);
    double worst_slope = 0.0;
    double worst_closed = 0.0;
    for (const Job& job : jobs) {
        const CoordinateMap map = build_change_of_variable(job.params);
        for (int k = 0; k < 100; ++k) {
            const double r = uniform(job.r_lo, job.r_hi);
            const double h = map.h_of_r(r);
            const double numeric = derivative([&](double x) { return map.h_of_r(x); }, r, 1e-4);
            worst_slope = std::max(worst_slope, rel(numeric, 2.0 * h / std::sqrt(radicand(job.params, h))));
            if (job.closed) worst_closed = std::max(worst_closed, rel(h, job.closed(r)));
        }
    }
    CriterionResult out = make(7, "coordinate map", worst_slope, 1e-6 * options.tolerance_scale,
                               std::to_string(jobs.size()) + " parameter sets x 100 points, max rel dh/dr err " +
                                   fmt(worst_slope) + ", max rel closed-form h(r) err " + fmt(worst_closed));
    out.passed = out.passed && worst_closed <= 1e-10 * options.tolerance_scale;
    return out;
}

CriterionResult special_functions(const Options& options) {
    Uniform uniform(options.seed + 11);
    const double s = options.tolerance_scale;
    bool ok = true;
    std::ostringstream detail;
    double worst_ratio = 0.0;  // worst metric / threshold over all sub-checks
    auto record = [&](const char* name, double metric, double threshold) {
        worst_ratio = std::max(worst_ratio, metric / threshold);
        if (!(metric <= threshold * s)) ok = false;
        if (detail.tellp() > 0) detail << "; ";
        detail << name << " " << fmt(metric) << " (<= " << fmt(threshold * s) << ")";
    };

    double contiguity = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double a = uniform(-5.0, 5.0);
        const double b = uniform(0.3, 8.0);
        const double z = uniform(1e-3, 20.0);
        const double t1 = (b - a) * sf::kummer_M(a - 1.0, b, z);
        const double t2 = (2.0 * a - b + z) * sf::kummer_M(a, b, z);
        const double t3 = a * sf::kummer_M(a + 1.0, b, z);
        contiguity = std::max(contiguity, std::abs(t1 + t2 - t3) / (std::abs(t1) + std::abs(t2) + std::abs(t3)));
    }
    record("Kummer contiguity", contiguity, 1e-9);

    double wronskian = 0.0;
    for (double kappa : {-1.3, 0.2, 0.9})
        for (double mu : {0.3, 0.75, 1.6})
            for (double z : {0.5, 2.0, 7.0}) {
                auto m = [&](double x) { return sf::whittaker_M(kappa, mu, x); };
                auto w = [&](double x) { return sf::whittaker_W(kappa, mu, x); };
                const double step = 1e-3 * z;
                const double value = m(z) * derivative(w, z, step) - derivative(m, z, step) * w(z);
                const double expected = -sf::gamma_real(1.0 + 2.0 * mu) / sf::gamma_real(mu - kappa + 0.5);
                wronskian = std::max(wronskian, rel(value, expected));
            }
    record("Whittaker Wronskian", wronskian, 1e-6);

    double tricomi = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double a = uniform(-3.0, 4.0);
        const double b = uniform(0.3, 5.0);
        const double z = uniform(0.1, 40.0);
        const double t1 = sf::tricomi_U(a - 1.0, b, z);
        const double t2 = (b - 2.0 * a - z) * sf::tricomi_U(a, b, z);
        const double t3 = a * (a - b + 1.0) * sf::tricomi_U(a + 1.0, b, z);
        tricomi = std::max(tricomi, std::abs(t1 + t2 + t3) / (std::abs(t1) + std::abs(t2) + std::abs(t3)));
    }
    record("Tricomi recurrence", tricomi, 1e-9);

    double bessel = 0.0;
    for (double nu : {1.0, 1.5, 2.25, 4.0, 7.5})
        for (double x : {0.1, 1.0, 5.0, 20.0, 40.0, 80.0}) {
            const double lhs = sf::bessel_I(nu - 1.0, x) - sf::bessel_I(nu + 1.0, x);
            bessel = std::max(bessel, rel(lhs, 2.0 * nu / x * sf::bessel_I(nu, x)));
        }
    record("Bessel recurrence", bessel, 1e-9);

    double gamma = 0.0;
    for (int k = 0; k <= 299; ++k) {
        const double x = 0.1 + (30.0 - 0.1) * k / 299.0;
        gamma = std::max(gamma, rel(sf::gamma_real(x + 1.0), x * sf::gamma_real(x)));
    }
    record("Gamma recursion", gamma, 1e-13);

    CriterionResult out = make(8, "special-function invariants (worst metric / threshold)", worst_ratio, s, detail.str());
    out.passed = ok;
    return out;
}

Report run_all(const Options& options) {
    using Fn = CriterionResult (*)(const Options&);
    const Fn checks[] = {special_case_spectra, fd_equivalence,  pole_alignment, integral_identity,
                         green_defect,         algebra,         coordinate_map, special_functions};
    Report report;
    for (std::size_t i = 0; i < std::size(checks); ++i) {
        try {
            report.criteria.push_back(checks[i](options));
        } catch (const std::exception& e) {
            CriterionResult failed;
            failed.id = static_cast<int>(i) + 1;
            failed.name = "criterion " + std::to_string(i + 1);
            failed.metric = std::numeric_limits<double>::infinity();
            failed.detail = std::string("exception: ") + e.what();
            report.criteria.push_back(failed);
        }
    }
    return report;
}

} // namespace natanzon::verify
