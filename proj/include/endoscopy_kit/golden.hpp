#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ek {

/// One named cross-checked value from the published tables this library
/// reproduces. run() returns an empty string on success and a human-readable
/// mismatch description on failure.
struct GoldenCase {
    std::string name;
    std::function<std::string()> run;
};

struct GoldenSummary {
    int total = 0;
    int passed = 0;
    std::vector<std::string> failures; // "name: message"
};

/// The full golden table, spanning every module.
const std::vector<GoldenCase>& golden_cases();

/// Run everything; never throws (exceptions become failures).
GoldenSummary run_golden_cases();

} // namespace ek
