#pragma once

#include <string>
#include <vector>

#include "core/constants.hpp"
#include "core/profile.hpp"

namespace shearwave {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;      // measured quantity
    double threshold = 0.0;  // bound it was tested against
    std::string note;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    int failed() const;
};

/// Full invariant suite for one configuration. Deterministic: fixed seeds,
/// fixed grids, no wall-clock input. When out_dir is nonempty, the CSV
/// artifacts (laminar table, xi scan, mu curve, symbol decay, report) are
/// written there, stamped with config_hash; repeated runs are byte-identical.
ValidationReport run_validation(const VorticityProfile& profile,
                                const PhysicalConstants& constants, const std::string& out_dir,
                                const std::string& config_hash, int steps_per_layer = 0);

}  // namespace shearwave
