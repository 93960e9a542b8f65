#pragma once

#include <map>
#include <string>

namespace chow {

/// Outcome of one check. A failed identity carries its nonzero residual.
struct VerificationStep {
    std::string name;
    bool passed = false;
    std::string citation; // the claim being checked
    std::string detail;
    std::string witness;
    std::map<std::string, std::string> data; // extra machine-report fields
};

} // namespace chow
