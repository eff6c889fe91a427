#pragma once

#include <string>
#include <vector>

namespace systolic {

/// Accumulates the outcome of a batch of checks. Failures carry a witness in
/// their message; warnings flag checks that were truncated by a cap.
struct CheckReport {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;

    bool ok() const { return failures.empty(); }
    void expect(bool cond, std::string_view failure) {
        ++checks;
        if (!cond) failures.emplace_back(failure);
    }
    void merge(const CheckReport& other) {
        checks += other.checks;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
        warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
    }
};

}  // namespace systolic
