#ifndef DUALAVG_VERIFY_HPP
#define DUALAVG_VERIFY_HPP

#include <string>
#include <vector>

namespace dualavg {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the built-in invariant checks (projection property, argmin
/// equivalences, trajectory inequality, per-iterate bounds, special-case
/// reduction, replay oracles). `selector` filters checks by substring;
/// empty runs everything.
std::vector<CheckResult> run_verification(const std::string& selector = "");

}  // namespace dualavg

#endif
