#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gn1d {

struct VerifyOptions {
    std::uint64_t seed = 1;
    /// Negative control: feeds an operator with a region of negative depth to the
    /// coercivity check, which must then report an assembly failure.
    bool break_depth = false;
};

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string measured;
    std::string required;
    double seconds = 0.0;
};

struct CheckEntry {
    int id;
    std::string name;
    std::function<CheckResult(const VerifyOptions&)> run;
};

CheckResult check_energy_conservation(const VerifyOptions& options);
CheckResult check_coercivity(const VerifyOptions& options);
CheckResult check_operator_exactness(const VerifyOptions& options);
CheckResult check_inverse_bounds(const VerifyOptions& options);
CheckResult check_formulation_equivalence(const VerifyOptions& options);
CheckResult check_decomposition(const VerifyOptions& options);
CheckResult check_picard(const VerifyOptions& options);
CheckResult check_energy_envelope(const VerifyOptions& options);
CheckResult check_mollifier(const VerifyOptions& options);
CheckResult check_norm_equivalence(const VerifyOptions& options);
CheckResult check_physical_sanity(const VerifyOptions& options);

/// All property checks in a fixed order.
const std::vector<CheckEntry>& verification_checks();

/// Runs every check; `progress` (optional) sees each result as it completes. An
/// exception escaping a check counts as a failure of that check.
std::vector<CheckResult> run_verification(const VerifyOptions& options,
                                          const std::function<void(const CheckResult&)>& progress = {});

/// One line per check: PASS/FAIL, id, name, measured and required values, runtime.
void print_check(std::ostream& os, const CheckResult& result);
void print_report(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace gn1d
