// Acceptance runner: one line per criterion, exit status 1 when any fails.
//   acceptance [--fast] [--verbose] [ID|tag ...]

#include <iostream>
#include <string>
#include <vector>

#include "jcfb/validation.hpp"

int main(int argc, char** argv) {
    using namespace jcfb::validation;
    Level level = Level::Full;
    bool verbose = false;
    std::vector<std::string> only;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--fast") level = Level::Fast;
        else if (arg == "--verbose") verbose = true;
        else only.push_back(arg);
    }

    std::vector<CheckResult> results;
    try {
        results = run_checks(level, only, true);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    bool all = true;
    for (const auto& r : results) {
        std::cout << r.id << " " << (r.passed() ? "PASS" : "FAIL") << " " << r.title;
        for (const auto& m : r.measurements) {
            if (!m.passed) std::cout << " | " << m.label << " = " << m.value;
        }
        if (!r.error.empty()) std::cout << " | error: " << r.error;
        std::cout << "\n";
        if (verbose || !r.passed()) print(std::cout, r);
        all = all && r.passed();
    }
    return all ? 0 : 1;
}
