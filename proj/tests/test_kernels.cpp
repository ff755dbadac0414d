#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "natanzon/kernels/kernels.hpp"

using namespace natanzon::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

constexpr PotentialCoefficients kCoeffs{-7.3, 1.9, 0.8, 0.6, 0.9, 3.1, 0.8 * 0.8 - 4 * 0.6 * 0.9};

} // namespace

TEST_CASE("dispatch") {
    const char* forced = std::getenv("NATANZON_ISA");
    if (forced && std::string(forced) == "scalar")
        CHECK(active_isa() == Isa::Scalar);
    else
        CHECK(active_isa() == (avx2_supported() ? Isa::Avx2 : Isa::Scalar));
    CHECK(isa_name(Isa::Avx2) == "avx2");
    CHECK(isa_name(Isa::Scalar) == "scalar");
    MESSAGE("active ISA: " << isa_name(active_isa()));
}

TEST_CASE("dispatched entry points validate sizes") {
    std::vector<double> h(5, 1.0), out(4);
    CHECK_THROWS_AS(potential_from_h(kCoeffs, h, out), std::invalid_argument);
    std::vector<double> d(3), off(3), s(2);
    std::vector<int> c(2);
    CHECK_THROWS_AS(sturm_counts(d, off, s, c, 1e-300), std::invalid_argument);
    std::vector<double> x(3), y(2);
    CHECK_THROWS_AS(tridiagonal_apply(d, std::vector<double>(2), x, y), std::invalid_argument);
}

TEST_CASE("scalar and AVX2 variants are bit-identical") {
    if (!avx2_supported()) {
        MESSAGE("AVX2 not available; equivalence skipped");
        return;
    }
    std::mt19937_64 rng(42);
    for (std::size_t n : {1, 3, 4, 5, 17, 64, 1001}) {
        const auto h = random_vector(rng, n, 1e-3, 50.0);
        std::vector<double> a(n), b(n);
        scalar::potential_from_h(kCoeffs, h.data(), a.data(), n);
        avx2::potential_from_h(kCoeffs, h.data(), b.data(), n);
        CHECK(bitwise_equal(a, b));

        const auto diag = random_vector(rng, n, -5.0, 5.0);
        const auto off = random_vector(rng, n - 1, -2.0, 2.0);
        const auto x = random_vector(rng, n, -1.0, 1.0);
        scalar::tridiagonal_apply(diag.data(), off.data(), x.data(), a.data(), n);
        avx2::tridiagonal_apply(diag.data(), off.data(), x.data(), b.data(), n);
        CHECK(bitwise_equal(a, b));

        std::vector<double> off_sq(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) off_sq[i] = off[i] * off[i];
        for (std::size_t m : {1, 2, 4, 7, 13}) {
            const auto shifts = random_vector(rng, m, -9.0, 9.0);
            std::vector<int> ca(m), cb(m);
            scalar::sturm_counts(diag.data(), off_sq.data(), n, shifts.data(), ca.data(), m, 1e-300);
            avx2::sturm_counts(diag.data(), off_sq.data(), n, shifts.data(), cb.data(), m, 1e-300);
            CHECK(ca == cb);
        }
    }
}

TEST_CASE("sturm counts on a known spectrum") {
    // Path-graph Laplacian 2 - 2cos(k pi/(n+1)).
    const std::size_t n = 50;
    std::vector<double> diag(n, 2.0), off_sq(n - 1, 1.0);
    std::vector<double> shifts{0.0, 1.1, 2.0, 3.9, 4.1};
    std::vector<int> counts(shifts.size());
    sturm_counts(diag, off_sq, shifts, counts, 1e-300);
    auto expected = [&](double s) {
        int c = 0;
        for (std::size_t k = 1; k <= n; ++k)
            if (2.0 - 2.0 * std::cos(static_cast<double>(k) * 3.141592653589793 / (n + 1)) < s) ++c;
        return c;
    };
    for (std::size_t j = 0; j < shifts.size(); ++j) CHECK(counts[j] == expected(shifts[j]));
}

TEST_CASE("tridiagonal apply") {
    std::vector<double> diag{2, 3, 4}, off{1, -1}, x{1, 2, 3}, y(3);
    tridiagonal_apply(diag, off, x, y);
    CHECK(y == std::vector<double>{4, 4, 10});
}
