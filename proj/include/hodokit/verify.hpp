#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hodokit {

/// Outcome of one verification check. `worst` is the largest observed
/// error/tolerance ratio (pass means worst <= 1 and no hard predicate failed).
struct CheckResult {
    std::string name;
    bool pass;
    double worst;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    std::size_t cases = 100;    ///< trajectory-sized case count (closed-form checks use 10x)
    double tol_override = 0.0;  ///< > 0 replaces every tolerance (debugging knob)
};

/// Run the oracle-vs-closed-form property suite. Deterministic for a fixed
/// seed and case count; independent cases may be evaluated in parallel.
std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

}  // namespace hodokit
