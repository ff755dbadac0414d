#include "natanzon/spectrum.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "natanzon/errors.hpp"

namespace natanzon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Low-order-first polynomial helpers on fixed-size coefficient arrays.
using Poly = std::array<double, 5>;

Poly mul(const Poly& a, const Poly& b) {
    Poly out{};
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly add(const Poly& a, const Poly& b, double scale_b = 1.0) {
    Poly out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + scale_b * b[i];
    return out;
}

double horner(std::span<const double> high_first, double x) {
    double acc = 0.0;
    for (double c : high_first) acc = acc * x + c;
    return acc;
}

// Admissible epsilon range: g2 - sigma2 eps > 0 (open), eta - c0 eps >= 0 (closed).
struct Admissible {
    double lo = -kInf;
    double hi = kInf;
    bool lo_closed = false;
    bool hi_closed = false;
    bool empty = false;

    bool contains(double x) const {
        if (empty) return false;
        const bool above = lo_closed ? x >= lo : x > lo;
        const bool below = hi_closed ? x <= hi : x < hi;
        return above && below;
    }
};

Admissible admissible_range(const NatanzonParams& p) {
    Admissible adm;
    auto tighten_hi = [&](double v, bool closed) {
        if (v < adm.hi || (v == adm.hi && !closed)) {
            adm.hi = v;
            adm.hi_closed = closed;
        }
    };
    auto tighten_lo = [&](double v, bool closed) {
        if (v > adm.lo || (v == adm.lo && !closed)) {
            adm.lo = v;
            adm.lo_closed = closed;
        }
    };
    if (p.sigma2() > 0.0)
        tighten_hi(p.g2() / p.sigma2(), false);
    else if (p.sigma2() < 0.0)
        tighten_lo(p.g2() / p.sigma2(), false);
    else if (!(p.g2() > 0.0))
        adm.empty = true;

    if (p.c0() > 0.0)
        tighten_hi(p.eta() / p.c0(), true);
    else if (p.c0() < 0.0)
        tighten_lo(p.eta() / p.c0(), true);
    else if (!(p.eta() >= 0.0))
        adm.empty = true;

    if (adm.lo > adm.hi || (adm.lo == adm.hi && !(adm.lo_closed && adm.hi_closed))) adm.empty = true;
    return adm;
}

// d/d eps of the quantization residual.
double residual_slope(const NatanzonParams& p, double eps) {
    const double a = p.g1() - p.sigma1() * eps;
    const double b = p.g2() - p.sigma2() * eps;
    const double c = p.eta() - p.c0() * eps;
    const double sb = std::sqrt(b);
    double slope = -p.sigma1() / (2.0 * sb) + a * p.sigma2() / (4.0 * b * sb);
    if (p.c0() != 0.0) slope += (c > 0.0) ? -p.c0() / (2.0 * std::sqrt(c)) : -std::copysign(kInf, p.c0());
    return slope;
}

std::vector<double> roots_recursive(std::vector<double> c) {
    // c is highest-first with c[0] != 0.
    const std::size_t degree = c.size() - 1;
    std::vector<double> out;
    if (degree == 0) return out;
    if (degree == 1) {
        out.push_back(-c[1] / c[0]);
        return out;
    }
    if (degree == 2) {
        const double a = c[0];
        const double b = c[1];
        const double cc = c[2];
        double disc = b * b - 4.0 * a * cc;
        const double scale = b * b + std::abs(4.0 * a * cc);
        if (disc < 0.0 && disc > -1e-14 * scale) disc = 0.0;
        if (disc < 0.0) return out;
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        if (q == 0.0) {
            out.push_back(0.0);
            out.push_back(0.0);
        } else {
            out.push_back(q / a);
            out.push_back(cc / q);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<double> deriv(degree);
    for (std::size_t i = 0; i < degree; ++i) deriv[i] = c[i] * static_cast<double>(degree - i);
    std::vector<double> critical = roots_recursive(deriv);

    double bound = 0.0;
    for (std::size_t i = 1; i < c.size(); ++i) bound = std::max(bound, std::abs(c[i] / c[0]));
    bound += 1.0;

    std::vector<double> knots{-bound};
    for (double x : critical)
        if (x > -bound && x < bound) knots.push_back(x);
    knots.push_back(bound);

    auto f = [&](double x) { return horner(c, x); };
    auto magnitude = [&](double x) {
        double acc = 0.0;
        for (double ci : c) acc = acc * std::abs(x) + std::abs(ci);
        return acc;
    };
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double a = knots[i];
        const double b = knots[i + 1];
        const double fa = f(a);
        const double fb = f(b);
        if (fa == 0.0) {
            out.push_back(a);
            continue;
        }
        if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
            std::uintmax_t iterations = 200;
            auto tol = [](double lo, double hi) {
                return std::abs(hi - lo) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
            };
            const auto bracket = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iterations);
            out.push_back(0.5 * (bracket.first + bracket.second));
        }
    }
    const double last = knots.back();
    if (f(last) == 0.0) out.push_back(last);
    // Tangent (even-multiplicity) roots sit on critical points.
    for (double x : critical)
        if (std::abs(f(x)) <= 1e-12 * magnitude(x)) out.push_back(x);

    std::sort(out.begin(), out.end());
    std::vector<double> unique;
    for (double x : out)
        if (unique.empty() || std::abs(x - unique.back()) > 1e-12 * std::max(1.0, std::abs(x))) unique.push_back(x);
    return unique;
}

} // namespace

double quantization_residual(const NatanzonParams& p, double epsilon, int n) {
    const double b = p.g2() - p.sigma2() * epsilon;
    const double c = p.eta() - p.c0() * epsilon;
    if (!(b > 0.0)) throw DomainError("quantization_residual: g2 - sigma2*eps <= 0");
    if (!(c >= 0.0)) throw DomainError("quantization_residual: eta - c0*eps < 0");
    const double a = p.g1() - p.sigma1() * epsilon;
    return a / (2.0 * std::sqrt(b)) + std::sqrt(c) + (2.0 * n + 1.0);
}

std::array<double, 5> quartic_coefficients(const NatanzonParams& p, int n) {
    const double big_n = 2.0 * n + 1.0;
    Poly low{};
    if (p.sigma2() == 0.0 && p.c0() == 0.0 && p.g2() > 0.0 && p.eta() >= 0.0) {
        // g1 - sigma1 eps = -2 sqrt(g2) (N + sqrt(eta))
        low[0] = p.g1() + 2.0 * std::sqrt(p.g2()) * (big_n + std::sqrt(p.eta()));
        low[1] = -p.sigma1();
    } else if (p.c0() == 0.0 && p.eta() >= 0.0) {
        // (g1 - sigma1 eps)^2 = 4 (g2 - sigma2 eps) (N + sqrt(eta))^2
        const double k = (big_n + std::sqrt(p.eta())) * (big_n + std::sqrt(p.eta()));
        low[0] = p.g1() * p.g1() - 4.0 * k * p.g2();
        low[1] = -2.0 * p.g1() * p.sigma1() + 4.0 * k * p.sigma2();
        low[2] = p.sigma1() * p.sigma1();
    } else if (p.sigma2() == 0.0 && p.g2() > 0.0) {
        // 4 g2 (eta - c0 eps) = (2 N sqrt(g2) + g1 - sigma1 eps)^2
        const double shift = 2.0 * big_n * std::sqrt(p.g2()) + p.g1();
        low[0] = 4.0 * p.g2() * p.eta() - shift * shift;
        low[1] = -4.0 * p.g2() * p.c0() + 2.0 * shift * p.sigma1();
        low[2] = -p.sigma1() * p.sigma1();
    } else {
        // (A^2 - 4B(N^2 + C))^2 - 64 N^2 B^2 C with A, B, C linear in eps.
        const Poly a{p.g1(), -p.sigma1(), 0, 0, 0};
        const Poly b{p.g2(), -p.sigma2(), 0, 0, 0};
        const Poly c{p.eta(), -p.c0(), 0, 0, 0};
        const Poly n2_plus_c = add(c, Poly{big_n * big_n, 0, 0, 0, 0});
        const Poly q = add(mul(a, a), mul(b, n2_plus_c), -4.0);
        low = add(mul(q, q), mul(mul(b, b), c), -64.0 * big_n * big_n);
    }
    return {low[4], low[3], low[2], low[1], low[0]};
}

std::vector<double> real_polynomial_roots(std::span<const double, 5> coefficients) {
    double scale = 0.0;
    for (double c : coefficients) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return {};
    std::size_t first = 0;
    while (first < coefficients.size() && std::abs(coefficients[first]) <= 1e-13 * scale) ++first;
    std::vector<double> c(coefficients.begin() + static_cast<std::ptrdiff_t>(first), coefficients.end());
    if (c.size() <= 1) return {};
    return roots_recursive(std::move(c));
}

std::optional<EnergyLevel> solve_level(const NatanzonParams& p, int n) {
    if (n < 0) throw DomainError("solve_level: n must be >= 0");
    const Admissible adm = admissible_range(p);
    if (adm.empty) return std::nullopt;

    const auto coeffs = quartic_coefficients(p, n);
    const std::vector<double> candidates = real_polynomial_roots(coeffs);

    std::vector<EnergyLevel> survivors;
    for (double x : candidates) {
        // Roots pushed just outside the closed threshold end by rounding snap back onto it.
        if (!adm.contains(x)) {
            const double snap = 1e-10 * std::max(1.0, std::abs(x));
            if (adm.hi_closed && x > adm.hi && x - adm.hi <= snap)
                x = adm.hi;
            else if (adm.lo_closed && x < adm.lo && adm.lo - x <= snap)
                x = adm.lo;
            else
                continue;
        }
        double f = quantization_residual(p, x, n);
        if (std::abs(f) > 1e-4 * std::max(1.0, std::abs(x))) continue;

        // Newton on the residual, kept inside the admissible range.
        for (int iter = 0; iter < 60 && f != 0.0; ++iter) {
            const double slope = residual_slope(p, x);
            if (!std::isfinite(slope) || slope == 0.0) break;
            double next = x - f / slope;
            if (!adm.contains(next)) {
                if (adm.hi_closed && next > adm.hi)
                    next = adm.hi;
                else if (adm.lo_closed && next < adm.lo)
                    next = adm.lo;
                else
                    next = 0.5 * (x + (next > x ? adm.hi : adm.lo));
            }
            if (!std::isfinite(next)) throw NumericalError("solve_level: root polishing diverged");
            const double fn = quantization_residual(p, next, n);
            const bool done = std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
            if (std::abs(fn) <= std::abs(f) || done) {
                x = next;
                f = fn;
            }
            if (done) break;
        }
        if (std::abs(f) > kLevelResidualTolerance) continue;

        EnergyLevel level;
        level.n = n;
        level.epsilon = x;
        level.residual = std::abs(f);
        level.valid = true;
        level.omega_root = std::sqrt(p.g2() - p.sigma2() * x);
        level.centrifugal_root = std::sqrt(p.eta() - p.c0() * x);
        level.threshold = level.centrifugal_root <= 1e-10;
        survivors.push_back(level);
    }

    std::sort(survivors.begin(), survivors.end(),
              [](const EnergyLevel& a, const EnergyLevel& b) { return a.epsilon < b.epsilon; });
    std::vector<EnergyLevel> distinct;
    for (const EnergyLevel& level : survivors)
        if (distinct.empty() ||
            std::abs(level.epsilon - distinct.back().epsilon) > 1e-10 * std::max(1.0, std::abs(level.epsilon)))
            distinct.push_back(level);
    if (distinct.empty()) return std::nullopt;
    if (distinct.size() > 1)
        throw MultipleRootsError("solve_level: " + std::to_string(distinct.size()) +
                                 " admissible roots for n = " + std::to_string(n));
    return distinct.front();
}

std::vector<EnergyLevel> spectrum(const NatanzonParams& p, int n_max) {
    if (n_max < 0) throw DomainError("spectrum: n_max must be >= 0");
    std::vector<EnergyLevel> levels;
    for (int n = 0; n <= n_max; ++n) {
        auto level = solve_level(p, n);
        if (!level) break;
        if (!levels.empty() && !(level->epsilon > levels.back().epsilon))
            throw NumericalError("spectrum: levels not increasing at n = " + std::to_string(n));
        levels.push_back(*level);
    }
    return levels;
}

double closed_form_spectrum(SpecialCase kind, const NatanzonParams& p, int n) {
    if (n < 0) throw DomainError("closed_form_spectrum: n must be >= 0");
    if (kind == SpecialCase::General) throw DomainError("closed_form_spectrum: no closed form for the general case");
    if (classify_special_case(p) != kind)
        throw DomainError("closed_form_spectrum: parameters do not match the " + std::string(to_string(kind)) +
                          " zero pattern");
    const double big_n = 2.0 * n + 1.0;
    switch (kind) {
    case SpecialCase::Oscillator:
        if (!(p.g2() > 0.0) || !(p.eta() >= 0.0))
            throw DomainError("closed_form_spectrum: oscillator needs g2 > 0 and eta >= 0");
        return p.g1() / p.sigma1() + 2.0 * std::sqrt(p.g2()) / p.sigma1() * (big_n + std::sqrt(p.eta()));
    case SpecialCase::Coulomb: {
        if (!(p.g1() < 0.0) || !(p.eta() >= 0.0))
            throw DomainError("closed_form_spectrum: Coulomb binding needs g1 < 0 and eta >= 0");
        const double k = big_n + std::sqrt(p.eta());
        return p.g2() / p.sigma2() - p.g1() * p.g1() / (4.0 * p.sigma2() * k * k);
    }
    case SpecialCase::Morse: {
        if (!(p.g2() > 0.0)) throw DomainError("closed_form_spectrum: Morse needs g2 > 0");
        const double root = -(big_n + p.g1() / (2.0 * std::sqrt(p.g2())));
        if (root < 0.0)
            throw DomainError("closed_form_spectrum: no Morse level for n = " + std::to_string(n));
        return (p.eta() - root * root) / p.c0();
    }
    case SpecialCase::General:
        break;
    }
    throw DomainError("closed_form_spectrum: unreachable");
}

} // namespace natanzon
