#include <cstdlib>
#include <stdexcept>
#include <string>

#include "natanzon/kernels/kernels.hpp"

namespace natanzon::kernels {

namespace {

struct Table {
    Isa isa;
    void (*potential)(const PotentialCoefficients&, const double*, double*, std::size_t);
    void (*sturm)(const double*, const double*, std::size_t, const double*, int*, std::size_t, double);
    void (*apply)(const double*, const double*, const double*, double*, std::size_t);
};

Table select() {
    const char* forced = std::getenv("NATANZON_ISA");
    const bool want_scalar = forced != nullptr && std::string(forced) == "scalar";
    if (!want_scalar && avx2_supported())
        return {Isa::Avx2, &avx2::potential_from_h, &avx2::sturm_counts, &avx2::tridiagonal_apply};
    return {Isa::Scalar, &scalar::potential_from_h, &scalar::sturm_counts, &scalar::tridiagonal_apply};
}

const Table& table() {
    static const Table t = select();
    return t;
}

} // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa active_isa() { return table().isa; }

void potential_from_h(const PotentialCoefficients& c, std::span<const double> h, std::span<double> out) {
    if (out.size() != h.size()) throw std::invalid_argument("potential_from_h: size mismatch");
    table().potential(c, h.data(), out.data(), h.size());
}

void sturm_counts(std::span<const double> diag, std::span<const double> off_sq, std::span<const double> shifts,
                  std::span<int> counts, double pivmin) {
    if (diag.empty() || off_sq.size() + 1 != diag.size() || counts.size() != shifts.size())
        throw std::invalid_argument("sturm_counts: inconsistent sizes");
    table().sturm(diag.data(), off_sq.data(), diag.size(), shifts.data(), counts.data(), shifts.size(), pivmin);
}

void tridiagonal_apply(std::span<const double> diag, std::span<const double> off, std::span<const double> x,
                       std::span<double> y) {
    if (diag.empty() || off.size() + 1 != diag.size() || x.size() != diag.size() || y.size() != diag.size())
        throw std::invalid_argument("tridiagonal_apply: inconsistent sizes");
    table().apply(diag.data(), off.data(), x.data(), y.data(), diag.size());
}

} // namespace natanzon::kernels
