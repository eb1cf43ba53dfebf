// validation.hpp — the acceptance checks, shared by `jcfb validate` and the
// acceptance test binary.

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace jcfb::validation {

enum class Level { Fast, Full };

struct Measurement {
    std::string label;
    double value;
    std::string relation;  // "<", ">", ">=", "==", "in"
    double threshold;
    double threshold_hi;   // upper bound for "in"
    bool passed;
};

struct CheckResult {
    std::string id;
    std::string tag;
    std::string title;
    std::vector<Measurement> measurements;
    std::vector<std::string> notes;
    double seconds = 0.0;
    std::string error;  // set when the check threw

    bool passed() const;
};

struct Check {
    std::string id;     // "A1".."A12"
    std::string tag;    // short name usable with --only
    std::string title;
    std::function<void(Level, CheckResult&)> body;
};

const std::vector<Check>& checks();

// True when `selector` names the check by id (case-insensitive) or tag.
bool matches(const Check& check, const std::string& selector);

CheckResult run_check(const Check& check, Level level);

// Runs the selected checks (all when `only` is empty), concurrently when
// `parallel` is set. Results come back in catalogue order. Throws
// std::invalid_argument when a selector matches nothing.
std::vector<CheckResult> run_checks(Level level, const std::vector<std::string>& only, bool parallel);

void print(std::ostream& os, const CheckResult& result);

}  // namespace jcfb::validation
