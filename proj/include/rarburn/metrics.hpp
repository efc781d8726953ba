#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rarburn/design.hpp"
#include "rarburn/scenario.hpp"

namespace rarburn {

// Denominator of the standardized effect |p1 - p0| / scale.
enum class DeltaVariant {
    RSS,  // sqrt(p0 q0 + p1 q1)
    SSD,  // sqrt(p0 q0) + sqrt(p1 q1)
};

enum class BurnInMode { PlugIn, PerReplication };

std::string_view to_string(DeltaVariant v);
std::string_view to_string(BurnInMode m);
DeltaVariant parse_delta_variant(std::string_view s);
BurnInMode parse_burnin_mode(std::string_view s);

// Standardized treatment effect in [0, inf]. Equal deterministic arms
// (p0 = p1 in {0, 1}) are a 0/0 form and throw Error(UndefinedEffect).
double standardized_effect(double p0, double p1, DeltaVariant variant);

// Saturating burn-in budget n * n_half / (n + n_half).
double burnin_budget(double n, double n_half);

// Geometric slope c-hat(rho) of the running allocation proportion:
//
//   (1/n) * sum_{i=2..n} -log(|n1(i)/i - rho| / |1/2 - rho|) / log(i)
//
// and 0 for rho = 1/2. The deviation |n1(i)/i - rho| is floored at 1/(2n).
double geometric_slope(const TrialPath& path, double rho);

// Asymmetric distance of the final arm-1 share from the interval between
// 1/2 and rho; wrong-direction imbalance is measured from 1/2.
double final_allocation_error(double prop_arm1, double rho);
double final_allocation_error(const TrialPath& path, double rho);

struct BurnInRecommendation {
    int b = 2;
    double raw = 0.0;   // 0.5 * budget * risk^delta before flooring
    double risk = 0.0;  // r + eps after clamping to [0, 1]
    std::vector<std::string> warnings;
};

// b = max{2, floor(0.5 * budget(n, n_half) * (r + eps)^delta)}, capped at
// floor(n/2). Uses 0^0 = 1 and treats delta = inf as sending any risk below
// one to zero.
BurnInRecommendation recommend_burnin(int n, double n_half, double risk, double delta);

// Per-replication ingredients of a metric report.
struct ReplicationMetrics {
    double rho = 0.5;         // design limit used for this replication
    double slope_rho = 0.0;   // c-hat at rho
    double slope_zero = 0.0;  // c-hat at 0
    double slope_one = 0.0;   // c-hat at 1
    double eps = 0.0;         // final allocation error at rho
    double delta = 0.0;       // standardized effect of this replication's rates
};

// Slopes are zeroed when the design's limit is exactly 1/2, since such a
// design has no direction to move in.
ReplicationMetrics replication_metrics(const TrialPath& path, double rho, double delta);

struct MetricOptions {
    int n_sim = 1000;
    std::uint64_t seed = 20251016;
    int threads = 0;
    DeltaVariant variant = DeltaVariant::RSS;
    BurnInMode mode = BurnInMode::PlugIn;
    // Limit to use when the design has no known one at these rates.
    std::optional<double> rho_override;
};

struct MetricReport {
    std::string design;
    int n = 0;
    double n_half = 0;
    bool global = false;    // rates sampled uniformly per replication
    bool adaptive = true;   // false for ER, whose burn-in is moot

    double r_tilde_rho = 0, r_tilde_0 = 0, r_tilde_1 = 0;
    double r = 0;
    double eps = 0;
    double risk = 0;  // r + eps
    double delta = 0;
    double budget = 0;
    int b = 2;
    double bp = 0;  // 2b / n, or the replication mean of 2 b_m / n
    int b_plugin = 2;
    double b_per_replication = 2;  // unrounded mean of b_m

    struct Radii {
        double r_tilde_rho = 0, r_tilde_0 = 0, r_tilde_1 = 0;
        double r = 0, eps = 0, risk = 0, b = 0, bp = 0;
    } ci;

    int n_sim = 0;
    BurnInMode mode = BurnInMode::PlugIn;
    DeltaVariant variant = DeltaVariant::RSS;
    std::vector<std::string> warnings;
};

// Reduces replication metrics into a report. `delta` is the scenario's
// effect; in global mode each replication's own delta is used instead.
MetricReport summarize_metrics(std::span<const ReplicationMetrics> reps, const DesignSpec& design,
                               int n, double n_half, double delta, bool global,
                               const MetricOptions& options);

// Reactiveness at fixed rates (p0, p1): n_sim trials with b = 2.
MetricReport reactiveness_scenario(const DesignSpec& design, const TrialScenario& scenario,
                                   const MetricOptions& options);

// Reactiveness integrated over (p0, p1) ~ U([0,1]^2): each replication draws
// its own rates, and b is aggregated per replication with that replication's
// delta.
MetricReport reactiveness_global(const DesignSpec& design, int n, double n_half,
                                 const MetricOptions& options);

}  // namespace rarburn
