#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rarburn/design.hpp"
#include "rarburn/inference.hpp"
#include "rarburn/metrics.hpp"
#include "rarburn/scenario.hpp"

namespace rarburn {

enum class BurnInKind { Formula, Fixed, Min, Third, Half };

struct BurnInOption {
    BurnInKind kind = BurnInKind::Min;
    int b = 0;  // only for Fixed

    static BurnInOption fixed(int b) { return {BurnInKind::Fixed, b}; }
};

// "formula", "min", "third", "half" or a positive integer.
BurnInOption parse_burnin_option(std::string_view s);
std::string to_string(const BurnInOption& option);

// Where type-I error is simulated.
enum class NullPoint {
    Control,   // p0 = p1 = scenario p0
    Midpoint,  // p0 = p1 = (p0 + p1) / 2
};

NullPoint parse_null_point(std::string_view s);
std::string_view to_string(NullPoint p);

struct ScenarioProfile {
    std::string name = "scenario";
    TrialScenario scenario;
    std::vector<DesignSpec> designs;
    std::vector<BurnInOption> burnin_options{{BurnInKind::Min}, {BurnInKind::Formula},
                                             {BurnInKind::Third}};
    int n_sim_metrics = 1000;
    int n_sim_oc = 10000;
    DeltaVariant delta_variant = DeltaVariant::RSS;
    BurnInMode mode = BurnInMode::PlugIn;
    NullPoint null_point = NullPoint::Control;
    std::uint64_t seed = 20251016;
    int threads = 0;
    // Burn-in to use for FORMULA, keyed by design label. Designs missing
    // here get b from a metrics run.
    std::map<std::string, int> formula_b;

    void validate() const;
    MetricOptions metric_options() const;
    TrialScenario null_scenario() const;
};

// Resolves a burn-in option to b for one design. FORMULA consults
// profile.formula_b and otherwise runs run_metrics.
int resolve_burnin(const ScenarioProfile& profile, const DesignSpec& design,
                   const BurnInOption& option);

// Operating characteristics for one design at burn-in b: n_sim_oc trials at
// the scenario rates and n_sim_oc at the null point, on disjoint seeds.
OperatingCharacteristics run_oc(const ScenarioProfile& profile, const DesignSpec& design, int b);
OperatingCharacteristics run_oc(const ScenarioProfile& profile, const DesignSpec& design,
                                const BurnInOption& option);

// Scenario-specific reactiveness, error and recommended burn-in.
MetricReport run_metrics(const ScenarioProfile& profile, const DesignSpec& design);

// Uniform-rate reactiveness at trial size n (the four-n sweep).
MetricReport run_metrics_global(const DesignSpec& design, int n, double n_half,
                                const MetricOptions& options);

}  // namespace rarburn
