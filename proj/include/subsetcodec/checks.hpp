#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace subsetcodec {

struct CheckOutcome {
    bool ok = false;
    std::string detail;
};

struct Check {
    std::string id;
    std::string title;
    double limit_seconds = 0;
    std::function<CheckOutcome(std::uint64_t seed)> run;
};

struct CheckResult {
    std::string id;
    std::string title;
    bool passed = false;  // outcome ok and finished inside the time limit
    bool timed_out = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
};

// The acceptance criteria in a fixed order.
const std::vector<Check>& acceptance_checks();

// Runs one check; exceptions become failures with the message as detail.
CheckResult run_check(const Check& check, std::uint64_t seed);

// "PASS  id  (1.23 s / 10 s)  detail"
std::string format_result(const CheckResult& r);

}  // namespace subsetcodec
