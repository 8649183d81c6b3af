#pragma once

#include <string>
#include <vector>

namespace qarc {

enum class VerifyLevel { quick, full };

struct PropertyReport {
    std::string name;
    bool passed = false;
    std::string detail;  // first failure, or a one-line summary statistic
    double seconds = 0.0;
};

/// Runs the whole invariant suite across all modules.  `quick` uses reduced
/// sample counts and band sizes (target: well under a minute); `full` runs
/// the complete grids, dominated by the q = 1 arc-length recovery scan.
std::vector<PropertyReport> run_verify(VerifyLevel level);

}  // namespace qarc
