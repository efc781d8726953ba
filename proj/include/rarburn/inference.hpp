#pragma once

#include <optional>
#include <span>

#include "rarburn/scenario.hpp"

namespace rarburn {

// A z statistic that may be +/-infinity (zero variance, nonzero difference)
// or undefined (zero variance, zero difference). Undefined never rejects.
using ZStat = std::optional<double>;

// Unpooled Wald statistic for p1 - p0. Throws Error(DegenerateArm) if an arm
// is empty.
ZStat wald_z(int s0, int n0, int s1, int n1);

// Pooled score statistic for p1 - p0.
ZStat score_z(int s0, int n0, int s1, int n1);

// z_{1 - alpha/2}
double normal_critical(double alpha);

struct TestResult {
    ZStat z1;  // Wald
    ZStat z0;  // score
    bool reject1 = false;
    bool reject0 = false;
    double critical = 0.0;
};

TestResult evaluate_tests(int s0, int n0, int s1, int n1, double alpha);

// What one completed trial contributes to the operating characteristics.
struct TrialRecord {
    bool reject1 = false;
    bool reject0 = false;
    double prop_arm1 = 0.5;
    double best_arm_prop = 0.5;  // share on the truly better arm, arm 0 on ties
    double squared_error = 0.0;  // (dhat - d)^2 with d = p1 - p0
};

TrialRecord trial_contributions(const TrialPath& path, const TrialScenario& scenario);

struct OperatingCharacteristics {
    double type1_z1 = 0, type1_z0 = 0;
    double power_z1 = 0, power_z0 = 0;
    double mean_prop_arm1 = 0;
    double patient_benefit = 0;
    double mse = 0;
    double se_type1_z1 = 0, se_type1_z0 = 0;
    double se_power_z1 = 0, se_power_z0 = 0;
    double se_prop_arm1 = 0, se_patient_benefit = 0, se_mse = 0;
    int n_sim = 0;
};

// Reduces null-scenario and alternative-scenario records, in order, into
// operating characteristics with Monte Carlo standard errors.
OperatingCharacteristics summarize_oc(std::span<const TrialRecord> null_records,
                                      std::span<const TrialRecord> alt_records);

}  // namespace rarburn
