#pragma once

#include "straticoh/json_io.hpp"

namespace straticoh {

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelfTestReport {
    std::vector<CheckResult> checks;
    int passed() const;
    int failed() const;
    Json to_json() const;
};

// Runs the invariant suites of every module over the built-in fixtures.
// Deterministic: fixed seeds, fixed iteration order.
SelfTestReport run_selftest();

}  // namespace straticoh
