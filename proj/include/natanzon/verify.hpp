#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "natanzon/potential.hpp"

// End-to-end verification suite shared by `natanzon verify` and the
// acceptance test binary. Each criterion is self-contained and returns a
// pass/fail verdict with the worst observed metric.

namespace natanzon::verify {

struct Options {
    // Every pass threshold is multiplied by this; tiny values demonstrate the
    // floor set by double precision.
    double tolerance_scale = 1.0;
    // Multiplies the BCH coefficient a (negative control; 1 = unperturbed).
    double bch_a_scale = 1.0;
    std::uint64_t seed = 20240611;
    int random_sets = 10;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double metric = 0.0;     // worst observed value of the checked quantity
    double threshold = 0.0;  // pass if metric <= threshold
    std::string detail;
};

struct Report {
    std::vector<CriterionResult> criteria;
    bool passed() const;
};

// Bound-state-admitting General parameter sets (sigma1, sigma2, c0 > 0),
// drawn from a seeded mt19937_64. Deterministic for a given seed.
std::vector<NatanzonParams> random_general_params(std::uint64_t seed, int count);

NatanzonParams oscillator_reference();  // sigma1 = 1, g2 = 1, g1 = 0, eta = 1/4
NatanzonParams coulomb_reference();     // sigma2 = 1, g2 = 0, g1 = -2, eta = 1
NatanzonParams morse_reference();       // c0 = 1, g2 = 1, g1 = -6, eta = 0

CriterionResult special_case_spectra(const Options& options);
CriterionResult fd_equivalence(const Options& options);
CriterionResult pole_alignment(const Options& options);
CriterionResult integral_identity(const Options& options);
CriterionResult green_defect(const Options& options);
CriterionResult algebra(const Options& options);
CriterionResult coordinate_map(const Options& options);
CriterionResult special_functions(const Options& options);

Report run_all(const Options& options);

} // namespace natanzon::verify
