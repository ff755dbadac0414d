#include "natanzon/potential.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "natanzon/errors.hpp"
#include "natanzon/kernels/kernels.hpp"

namespace natanzon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Half-width of the node parameter range on a side that runs to 0 or infinity
// (h spans e^-30 .. e^30 around the scale) and on a side that ends at a root
// of R, where dh/dr blows up and the table stops short of the endpoint.
constexpr double kOpenSpan = 30.0;
constexpr double kRootSpan = 13.8;

std::vector<double> positive_roots(const NatanzonParams& p) {
    std::vector<double> roots;
    const double a = p.sigma2();
    const double b = p.sigma1();
    const double c = p.c0();
    if (a == 0.0) {
        if (b != 0.0) roots.push_back(-c / b);
    } else {
        const double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
            if (q != 0.0) {
                roots.push_back(q / a);
                roots.push_back(c / q);
            } else {
                roots.push_back(0.0);
            }
        }
    }
    std::erase_if(roots, [](double x) { return !(x > 0.0) || !std::isfinite(x); });
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// All maximal intervals of (0, inf) on which R > 0, left to right.
std::vector<HInterval> positivity_intervals(const NatanzonParams& p) {
    std::vector<double> cuts{0.0};
    for (double root : positive_roots(p)) cuts.push_back(root);
    cuts.push_back(kInf);
    std::vector<HInterval> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const double probe = std::isinf(hi) ? (lo > 0.0 ? 2.0 * lo + 1.0 : 1.0) : 0.5 * (lo + hi);
        if (radicand(p, probe) > 0.0) out.push_back({lo, hi});
    }
    return out;
}

bool lower_end_convergent(const NatanzonParams& p, double lo) { return lo > 0.0 || p.c0() == 0.0; }

template <class F>
double gauss_kronrod(F&& f, double a, double b, double tolerance) {
    double error = 0.0;
    double l1 = 0.0;
    // Integrate an O(1) integrand over [0, 1]: Boost's error estimate has an
    // absolute floor that swamps small results.
    const double width = b - a;
    double scale = std::max({std::abs(f(a + 0.25 * width)), std::abs(f(a + 0.5 * width)), std::abs(f(a + 0.75 * width))});
    if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
    auto unit = [&](double t) { return f(a + width * t) / scale; };
    const double factor = width * scale;
    const double value =
        factor * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(unit, 0.0, 1.0, 20, tolerance, &error, &l1);
    error *= std::abs(factor);
    l1 *= std::abs(factor);
    if (!std::isfinite(value) || error > 1e3 * tolerance * std::max(l1, 1e-300) + 1e-300)
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "coordinate map quadrature did not reach tolerance (error %.3g, L1 %.3g on [%.17g, %.17g])",
                      error, l1, a, b);
        throw QuadratureError(buf);
    }
    return value;
}

// int_{ha}^{hb} sqrt(R)/(2t) dt for [ha, hb] inside the closure of (lo, hi).
// Endpoints at a convergent zero of the integrand's domain (h = 0 with c0 = 0,
// or a root of R) are handled by t = lo + s^2 / t = hi - s^2, which removes
// the square-root behaviour; other segments are integrated in u = ln t.
double segment_integral(const NatanzonParams& p, double lo, double hi, double ha, double hb, double tol) {
    if (ha == hb) return 0.0;
    if (ha > hb) return -segment_integral(p, lo, hi, hb, ha, tol);
    const double s1 = p.sigma1();
    const double s2 = p.sigma2();

    // Evaluating R near one of its roots cancels badly, so the substitution
    // follows the nearer endpoint of the domain.
    const double inf = std::numeric_limits<double>::infinity();
    const double dist_lo = lower_end_convergent(p, lo) ? ha - lo : inf;
    const double dist_hi = std::isfinite(hi) ? hi - hb : inf;
    if (dist_lo <= hb - ha && dist_hi <= hb - ha) {
        const double mid = 0.5 * (ha + hb);
        return segment_integral(p, lo, hi, ha, mid, tol) + segment_integral(p, lo, hi, mid, hb, tol);
    }
    const bool lower_sqrt = std::isfinite(dist_lo) && dist_lo <= dist_hi;
    // Away from a convergent lower root the log form also covers h near 0.
    const bool upper_sqrt = !lower_sqrt && std::isfinite(dist_hi) && dist_hi <= std::min(dist_lo, ha);
    if (lower_sqrt) {
        // R(lo + s^2) = s^2 (sigma2 (2 lo + s^2) + sigma1)
        auto g = [&](double s) {
            const double s_sq = s * s;
            const double k = std::max(s2 * (2.0 * lo + s_sq) + s1, 0.0);
            if (lo == 0.0) return std::sqrt(k);
            return s_sq * std::sqrt(k) / (lo + s_sq);
        };
        return gauss_kronrod(g, std::sqrt(ha - lo), std::sqrt(hb - lo), tol);
    }
    if (upper_sqrt) {
        // R(hi - s^2) = s^2 (-(sigma2 (2 hi - s^2) + sigma1))
        auto g = [&](double s) {
            const double s_sq = s * s;
            const double k = std::max(-(s2 * (2.0 * hi - s_sq) + s1), 0.0);
            return s_sq * std::sqrt(k) / (hi - s_sq);
        };
        return gauss_kronrod(g, std::sqrt(hi - hb), std::sqrt(hi - ha), tol);
    }
    auto g = [&](double u) { return 0.5 * std::sqrt(std::max(radicand(p, std::exp(u)), 0.0)); };
    return gauss_kronrod(g, std::log(ha), std::log(hb), tol);
}

kernels::PotentialCoefficients coefficients(const NatanzonParams& p) {
    return {p.g1(), p.g2(), p.sigma1(), p.sigma2(), p.c0(), p.eta(), p.delta()};
}

} // namespace

NatanzonParams::NatanzonParams(double g1, double g2, double sigma1, double sigma2, double c0, double eta)
    : g1_(g1), g2_(g2), sigma1_(sigma1), sigma2_(sigma2), c0_(c0), eta_(eta) {
    for (double v : {g1, g2, sigma1, sigma2, c0, eta})
        if (!std::isfinite(v)) throw DomainError("NatanzonParams: parameters must be finite");
    if (sigma1 == 0.0 && sigma2 == 0.0 && c0 == 0.0)
        throw DomainError(
            "NatanzonParams: sigma1, sigma2 and c0 are all zero, so R vanishes identically and the "
            "coordinate map dh/dr = 2h/sqrt(R) is singular");
}

NatanzonParams NatanzonParams::oscillator(double g1, double g2, double sigma1, double eta) {
    return {g1, g2, sigma1, 0.0, 0.0, eta};
}

NatanzonParams NatanzonParams::coulomb(double g1, double g2, double sigma2, double eta) {
    return {g1, g2, 0.0, sigma2, 0.0, eta};
}

NatanzonParams NatanzonParams::morse(double g1, double g2, double c0, double eta) {
    return {g1, g2, 0.0, 0.0, c0, eta};
}

std::string_view to_string(SpecialCase kind) {
    switch (kind) {
    case SpecialCase::Oscillator:
        return "oscillator";
    case SpecialCase::Coulomb:
        return "coulomb";
    case SpecialCase::Morse:
        return "morse";
    case SpecialCase::General:
        break;
    }
    return "general";
}

SpecialCase classify_special_case(const NatanzonParams& p) {
    if (p.sigma2() == 0.0 && p.c0() == 0.0) return SpecialCase::Oscillator;
    if (p.sigma1() == 0.0 && p.c0() == 0.0) return SpecialCase::Coulomb;
    if (p.sigma1() == 0.0 && p.sigma2() == 0.0) return SpecialCase::Morse;
    return SpecialCase::General;
}

double radicand(const NatanzonParams& p, double h) { return (p.sigma2() * (h * h) + p.sigma1() * h) + p.c0(); }

double potential_of_h(const NatanzonParams& p, double h) {
    if (!(radicand(p, h) > 0.0)) throw DomainError("potential_of_h: R(h) <= 0 at h = " + std::to_string(h));
    double v = 0.0;
    kernels::scalar::potential_from_h(coefficients(p), &h, &v, 1);
    return v;
}

HInterval positivity_interval(const NatanzonParams& p, double h_inside) {
    if (!(h_inside > 0.0) || !(radicand(p, h_inside) > 0.0))
        throw DomainError("positivity_interval: R <= 0 at h = " + std::to_string(h_inside));
    for (const HInterval& iv : positivity_intervals(p))
        if (h_inside > iv.lo && h_inside < iv.hi) return iv;
    throw DomainError("positivity_interval: h = " + std::to_string(h_inside) + " sits on a root of R");
}

double r_of_h(const NatanzonParams& p, double h, Anchor anchor, double tolerance) {
    if (!(h > 0.0)) throw DomainError("r_of_h: requires h > 0");
    const HInterval iv = positivity_interval(p, h);
    if (anchor.h == 0.0) {
        if (iv.lo != 0.0 || !lower_end_convergent(p, 0.0))
            throw DomainError("r_of_h: anchor at h -> 0+ requires c0 = 0 and R > 0 next to h = 0");
    } else if (!(anchor.h >= iv.lo && anchor.h <= iv.hi) || (anchor.h == iv.lo && !lower_end_convergent(p, iv.lo))) {
        throw DomainError("r_of_h: integration path from the anchor leaves the region R > 0");
    }
    return anchor.r + segment_integral(p, iv.lo, iv.hi, anchor.h, h, tolerance);
}

double CoordinateMap::integrate(double ha, double hb) const {
    return segment_integral(params_, h_lo_, h_hi_, ha, hb, 0.1 * tolerance_);
}

double CoordinateMap::dh_dr(double h) const { return 2.0 * h / std::sqrt(radicand(params_, h)); }

double CoordinateMap::r_of_h(double h) const {
    if (!(h > h_lo_ && h < h_hi_)) throw DomainError("CoordinateMap::r_of_h: h outside the h-domain");
    const auto it = std::upper_bound(node_h_.begin(), node_h_.end(), h);
    if (it == node_h_.begin()) {
        if (lower_convergent_) return r_lo_ + integrate(h_lo_, h);
        return node_r_.front() - integrate(h, node_h_.front());
    }
    const std::size_t k = static_cast<std::size_t>(it - node_h_.begin()) - 1;
    return node_r_[k] + integrate(node_h_[k], h);
}

double CoordinateMap::h_of_r(double r) const {
    if (!contains_r(r))
        throw DomainError("h_of_r: r = " + std::to_string(r) + " outside the r-domain (" + std::to_string(r_lo_) +
                          ", " + std::to_string(r_hi_) + ")");
    const auto it = std::upper_bound(node_r_.begin(), node_r_.end(), r);
    const std::size_t k = static_cast<std::size_t>(it - node_r_.begin());

    // Bracket [ha, hb] with r(ha) <= r <= r(hb); ref/r_ref anchor the quadrature.
    double ha = 0.0;
    double hb = 0.0;
    double ref = 0.0;
    double r_ref = 0.0;
    if (k == 0) {
        hb = node_h_.front();
        if (lower_convergent_) {
            ha = h_lo_;
            ref = h_lo_;
            r_ref = r_lo_;
        } else {
            ref = hb;
            r_ref = node_r_.front();
            double step = 1.0;
            ha = h_lo_ + (hb - h_lo_) * std::exp(-step);
            while (r_ref - integrate(ha, ref) > r) {
                step *= 2.0;
                ha = h_lo_ + (hb - h_lo_) * std::exp(-step);
                if (!(ha > h_lo_)) throw DomainError("h_of_r: h underflows for r = " + std::to_string(r));
            }
        }
    } else if (k == node_r_.size()) {
        ha = node_h_.back();
        ref = ha;
        r_ref = node_r_.back();
        if (upper_convergent_) {
            hb = h_hi_;
        } else {
            hb = 2.0 * ha;
            while (r_ref + integrate(ref, hb) < r) {
                hb *= 2.0;
                if (!std::isfinite(hb)) throw DomainError("h_of_r: h overflows for r = " + std::to_string(r));
            }
        }
    } else {
        ha = node_h_[k - 1];
        hb = node_h_[k];
        ref = ha;
        r_ref = node_r_[k - 1];
        if (node_r_[k - 1] == r) return ha;
    }

    auto residual = [&](double h) { return (r_ref + integrate(ref, h)) - r; };
    double h = 0.5 * (ha + hb);
    if (std::isfinite(hb) && hb > ha) {
        // Linear seed from the node pair when both ends carry r values.
        const double ra = (ha == ref) ? r_ref : r_ref - integrate(ha, ref);
        const double rb = r_ref + integrate(ref, hb);
        if (rb > ra) h = ha + (hb - ha) * std::clamp((r - ra) / (rb - ra), 0.0, 1.0);
        if (!(h > ha && h < hb)) h = 0.5 * (ha + hb);
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double f = residual(h);
        if (f == 0.0) return h;
        if (f < 0.0)
            ha = h;
        else
            hb = h;
        const double slope = std::sqrt(std::max(radicand(params_, h), 0.0)) / (2.0 * h);
        double next = (slope > 0.0) ? h - f / slope : 0.5 * (ha + hb);
        if (!(next > ha && next < hb)) next = 0.5 * (ha + hb);
        if (std::abs(next - h) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(h) ||
            std::abs(hb - ha) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(h))
            return next;
        h = next;
    }
    throw NumericalError("h_of_r: iteration did not converge for r = " + std::to_string(r));
}

CoordinateMap build_change_of_variable(const NatanzonParams& params, const MapConfig& config) {
    if (!(config.tolerance > 0.0) || config.min_nodes < 2 || config.max_nodes < config.min_nodes)
        throw DomainError("build_change_of_variable: invalid configuration");

    CoordinateMap map;
    map.params_ = params;
    map.tolerance_ = config.tolerance;

    HInterval iv;
    Anchor anchor;
    if (config.anchor) {
        anchor = *config.anchor;
        if (anchor.h == 0.0) {
            const auto all = positivity_intervals(params);
            if (all.empty() || all.front().lo != 0.0 || !lower_end_convergent(params, 0.0))
                throw DomainError("build_change_of_variable: anchor at h -> 0+ needs c0 = 0 and R > 0 near 0");
            iv = all.front();
        } else {
            if (!(anchor.h > 0.0) || !(radicand(params, anchor.h) > 0.0))
                throw DomainError("build_change_of_variable: R <= 0 at the anchor h0 = " + std::to_string(anchor.h));
            iv = positivity_interval(params, anchor.h);
        }
    } else {
        const auto all = positivity_intervals(params);
        if (all.empty()) throw DomainError("build_change_of_variable: R <= 0 everywhere on h > 0");
        iv = all.back();
        if (lower_end_convergent(params, iv.lo))
            anchor = {iv.lo, 0.0};
        else
            anchor = {std::isfinite(iv.hi) && iv.hi <= 1.0 ? 0.5 * iv.hi : 1.0, 0.0};
    }
    map.h_lo_ = iv.lo;
    map.h_hi_ = iv.hi;
    map.anchor_ = anchor;
    map.lower_convergent_ = lower_end_convergent(params, iv.lo);
    map.upper_convergent_ = std::isfinite(iv.hi);

    // Node parameterisation: h = lo + scale e^u on half-open domains,
    // logistic on bounded ones.
    const bool bounded = std::isfinite(iv.hi);
    const double lo_span = iv.lo > 0.0 ? kRootSpan : kOpenSpan;
    const double hi_span = bounded ? kRootSpan : kOpenSpan;
    const double scale = iv.lo > 0.0 ? iv.lo : 1.0;
    auto node_at = [&](double u) {
        if (bounded) return iv.lo + (iv.hi - iv.lo) / (1.0 + std::exp(-u));
        return iv.lo + scale * std::exp(u);
    };

    for (std::size_t n = config.min_nodes;; n *= 2) {
        map.node_h_.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = -lo_span + (lo_span + hi_span) * static_cast<double>(i) / static_cast<double>(n - 1);
            map.node_h_[i] = node_at(u);
        }
        map.node_h_.erase(std::unique(map.node_h_.begin(), map.node_h_.end()), map.node_h_.end());
        const std::size_t count = map.node_h_.size();
        map.node_r_.assign(count, 0.0);

        // Accumulate outward from the anchor.
        const std::size_t first_above =
            static_cast<std::size_t>(std::lower_bound(map.node_h_.begin(), map.node_h_.end(), anchor.h) -
                                     map.node_h_.begin());
        if (first_above < count) {
            map.node_r_[first_above] = anchor.r + map.integrate(anchor.h, map.node_h_[first_above]);
            for (std::size_t i = first_above + 1; i < count; ++i)
                map.node_r_[i] = map.node_r_[i - 1] + map.integrate(map.node_h_[i - 1], map.node_h_[i]);
            for (std::size_t i = first_above; i-- > 0;)
                map.node_r_[i] = map.node_r_[i + 1] - map.integrate(map.node_h_[i], map.node_h_[i + 1]);
        } else {
            map.node_r_[count - 1] = anchor.r - map.integrate(map.node_h_[count - 1], anchor.h);
            for (std::size_t i = count - 1; i-- > 0;)
                map.node_r_[i] = map.node_r_[i + 1] - map.integrate(map.node_h_[i], map.node_h_[i + 1]);
        }
        map.r_lo_ = map.lower_convergent_ ? map.node_r_.front() - map.integrate(iv.lo, map.node_h_.front()) : -kInf;
        map.r_hi_ = map.upper_convergent_ ? map.node_r_.back() + map.integrate(map.node_h_.back(), iv.hi) : kInf;

        bool monotone = true;
        for (std::size_t i = 1; i < count; ++i) monotone = monotone && map.node_r_[i] > map.node_r_[i - 1];
        bool round_trip = monotone;
        for (std::size_t i = 0; round_trip && i < count; ++i) {
            const double h = map.h_of_r(map.node_r_[i]);
            round_trip = std::abs(h - map.node_h_[i]) <= config.tolerance * std::max(1.0, std::abs(map.node_h_[i]));
        }
        if (round_trip) break;
        if (2 * n > config.max_nodes)
            throw NumericalError("build_change_of_variable: node table failed the round-trip check at " +
                                 std::to_string(n) + " nodes");
    }
    return map;
}

double potential_of_r(const CoordinateMap& map, double r) { return potential_of_h(map.params(), map.h_of_r(r)); }

void potential_of_r(const CoordinateMap& map, std::span<const double> r, std::span<double> out) {
    if (r.size() != out.size()) throw DomainError("potential_of_r: size mismatch");
    std::vector<double> h(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) h[i] = map.h_of_r(r[i]);
    kernels::potential_from_h(coefficients(map.params()), h, out);
}

} // namespace natanzon
