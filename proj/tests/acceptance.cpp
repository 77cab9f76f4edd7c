// Acceptance gate: one PASS/FAIL line per criterion; nonzero exit on any failure.

#include <cstring>
#include <iostream>

#include "eqkit/acceptance.hpp"

int main(int argc, char** argv) {
    using namespace eqkit::acceptance;
    Level level = Level::full;
    unsigned jobs = eqkit::default_jobs();
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) level = Level::quick;
        if (std::strcmp(argv[i], "--full") == 0) level = Level::full;
    }
    std::cout << "acceptance level: " << level_name(level) << '\n';
    const auto results = run_suite(level, jobs, 0, [](const CriterionResult& r) { std::cout << summary_line(r) << std::endl; });
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << (failed == 0 ? "ALL CRITERIA PASSED" : std::to_string(failed) + " CRITERIA FAILED") << '\n';
    return failed == 0 ? 0 : 1;
}
