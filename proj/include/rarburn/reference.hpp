#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace rarburn {

// Published values bundled for regression diffs. Percent-scaled quantities
// are stored as printed (x100); missing cells ("-") are NaN.
struct MetricRef {
    std::string_view scenario;  // empty for the uniform-rate sweep
    int n;
    std::string_view design;
    double r, r_ci, eps, eps_ci, sum, sum_ci, b, b_ci, bp, bp_ci;
};

struct OcRef {
    std::string_view design;
    int burnin;  // 0 for ER
    double type1_z1, type1_z0, power_z1, power_z0;  // percent
    double prop_arm1, mse;
};

std::span<const MetricRef> reference_sweep();
// scenario: "ARREST" or "CALISTO"; unknown names give an empty span.
std::span<const MetricRef> reference_metrics(std::string_view scenario);
std::span<const OcRef> reference_oc(std::string_view scenario);

const MetricRef* find_reference_metric(std::string_view scenario, int n, std::string_view design);
// slot 0, 1, 2 = minimal, formula and n/3 burn-in rows; ER has one row.
const OcRef* find_reference_oc(std::string_view scenario, std::string_view design, int slot);

// Printed recommended burn-in for a design in a case study.
std::optional<int> reference_formula_b(std::string_view scenario, std::string_view design);

}  // namespace rarburn
