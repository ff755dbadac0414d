// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>

#include "natanzon/verify.hpp"

int main() {
    using namespace natanzon::verify;
    using Fn = CriterionResult (*)(const Options&);
    const Fn criteria[] = {special_case_spectra, fd_equivalence,  pole_alignment, integral_identity,
                           green_defect,         algebra,         coordinate_map, special_functions};
    const Options options;
    int failures = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        CriterionResult result;
        try {
            result = criteria[i](options);
        } catch (const std::exception& e) {
            result.id = static_cast<int>(i) + 1;
            result.name = "criterion";
            result.detail = std::string("exception: ") + e.what();
            result.passed = false;
        }
        if (!result.passed) ++failures;
        std::printf("%s [%d] %s: metric %.3g (threshold %.3g); %s\n", result.passed ? "PASS" : "FAIL", result.id,
                    result.name.c_str(), result.metric, result.threshold, result.detail.c_str());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(std::size(criteria)) - failures,
                std::size(criteria), seconds);
    return failures == 0 ? 0 : 1;
}
