#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace natanzon {

// The six dimensionless parameters of the confluent family
//   V = (g2 h^2 + g1 h + eta)/R + (sigma1 h - sigma2 h^2)/R^2 - (5/4) Delta h^2 / R^3,
//   R = sigma2 h^2 + sigma1 h + c0,   dh/dr = 2h / sqrt(R).
// Units: hbar = 1, m = 1/2, so H = -d^2/dr^2 + V and E = epsilon.
class NatanzonParams {
public:
    NatanzonParams() = default;
    // Throws DomainError when sigma1 = sigma2 = c0 = 0 (R vanishes identically)
    // or any entry is not finite.
    NatanzonParams(double g1, double g2, double sigma1, double sigma2, double c0, double eta);

    double g1() const { return g1_; }
    double g2() const { return g2_; }
    double sigma1() const { return sigma1_; }
    double sigma2() const { return sigma2_; }
    double c0() const { return c0_; }
    double eta() const { return eta_; }
    double delta() const { return sigma1_ * sigma1_ - 4.0 * sigma2_ * c0_; }

    static NatanzonParams oscillator(double g1, double g2, double sigma1, double eta);
    static NatanzonParams coulomb(double g1, double g2, double sigma2, double eta);
    static NatanzonParams morse(double g1, double g2, double c0, double eta);

private:
    double g1_ = 0.0;
    double g2_ = 0.0;
    double sigma1_ = 1.0;
    double sigma2_ = 0.0;
    double c0_ = 0.0;
    double eta_ = 0.0;
};

enum class SpecialCase { Oscillator, Coulomb, Morse, General };

std::string_view to_string(SpecialCase kind);

// sigma2 = c0 = 0 -> Oscillator, sigma1 = c0 = 0 -> Coulomb,
// sigma1 = sigma2 = 0 -> Morse, else General.
SpecialCase classify_special_case(const NatanzonParams& params);

// R(h) = sigma2 h^2 + sigma1 h + c0
double radicand(const NatanzonParams& params, double h);

// V expressed in the map variable h. Requires R(h) > 0.
double potential_of_h(const NatanzonParams& params, double h);

// Integration constant of the map: r(h0) = r0. h0 == 0 stands for the limit
// h -> 0+, admissible only when the integral converges there (c0 == 0).
struct Anchor {
    double h = 1.0;
    double r = 0.0;
};

// Maximal open interval of (0, inf) containing `h_inside` on which R > 0.
// Throws DomainError when R(h_inside) <= 0.
struct HInterval {
    double lo = 0.0;
    double hi = 0.0;  // may be +inf
};
HInterval positivity_interval(const NatanzonParams& params, double h_inside);

// r(h) = r0 + int_{h0}^{h} sqrt(R(t)) / (2t) dt by adaptive quadrature.
// Throws DomainError if the path leaves R > 0 or the anchor sits at a
// divergent endpoint.
double r_of_h(const NatanzonParams& params, double h, Anchor anchor, double tolerance = 1e-13);

struct MapConfig {
    double tolerance = 1e-12;
    std::size_t min_nodes = 512;
    std::size_t max_nodes = 1 << 16;
    // Default policy when absent: h -> 0+ (r = 0) when the integral converges
    // at the lower end of the domain, h = 1 (r = 0) otherwise.
    std::optional<Anchor> anchor;
};

// Tabulated monotone map r <-> h over the positivity interval of R that
// contains the anchor (the rightmost such interval when no anchor is given).
// Immutable after construction.
class CoordinateMap {
public:
    const NatanzonParams& params() const { return params_; }
    HInterval h_domain() const { return {h_lo_, h_hi_}; }
    double r_lo() const { return r_lo_; }  // may be -inf
    double r_hi() const { return r_hi_; }  // may be +inf
    Anchor anchor() const { return anchor_; }
    double tolerance() const { return tolerance_; }
    std::span<const double> node_h() const { return node_h_; }
    std::span<const double> node_r() const { return node_r_; }

    bool contains_r(double r) const { return r > r_lo_ && r < r_hi_; }

    double r_of_h(double h) const;
    // Newton iteration safeguarded by a bracket seeded from the node table.
    // Throws DomainError when r lies outside the r-domain.
    double h_of_r(double r) const;

    // dh/dr = 2h / sqrt(R)
    double dh_dr(double h) const;

    friend CoordinateMap build_change_of_variable(const NatanzonParams& params, const MapConfig& config);

private:
    double integrate(double ha, double hb) const;
    double integral_from_lower(double h) const;
    double integral_to_upper(double h) const;

    NatanzonParams params_;
    double h_lo_ = 0.0;
    double h_hi_ = 0.0;
    bool lower_convergent_ = false;
    bool upper_convergent_ = false;
    double r_lo_ = 0.0;
    double r_hi_ = 0.0;
    Anchor anchor_;
    double tolerance_ = 1e-12;
    std::vector<double> node_h_;
    std::vector<double> node_r_;
};

CoordinateMap build_change_of_variable(const NatanzonParams& params, const MapConfig& config = {});

// V(r) = potential_of_h(h_of_r(r)).
double potential_of_r(const CoordinateMap& map, double r);

// Batched V over a set of r values; the h -> V step runs through the
// dispatched SIMD kernel.
void potential_of_r(const CoordinateMap& map, std::span<const double> r, std::span<double> out);

} // namespace natanzon
