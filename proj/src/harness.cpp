#include "rarburn/harness.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "rarburn/error.hpp"
#include "rarburn/parallel.hpp"
#include "rarburn/rng.hpp"
#include "rarburn/trial.hpp"

namespace rarburn {

BurnInOption parse_burnin_option(std::string_view s) {
    if (s == "formula") return {BurnInKind::Formula};
    if (s == "min") return {BurnInKind::Min};
    if (s == "third") return {BurnInKind::Third};
    if (s == "half") return {BurnInKind::Half};
    int b = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), b);
    if (ec != std::errc() || end != s.data() + s.size() || b < 2)
        throw Error(ErrorCode::Configuration,
                    "burn-in option must be formula, min, third, half or an integer >= 2 (got '" +
                        std::string(s) + "')");
    return BurnInOption::fixed(b);
}

std::string to_string(const BurnInOption& option) {
    switch (option.kind) {
        case BurnInKind::Formula: return "formula";
        case BurnInKind::Min: return "min";
        case BurnInKind::Third: return "third";
        case BurnInKind::Half: return "half";
        case BurnInKind::Fixed: return std::to_string(option.b);
    }
    return "?";
}

NullPoint parse_null_point(std::string_view s) {
    if (s == "control") return NullPoint::Control;
    if (s == "midpoint") return NullPoint::Midpoint;
    throw Error(ErrorCode::Configuration,
                "unknown null point '" + std::string(s) + "' (control|midpoint)");
}

std::string_view to_string(NullPoint p) { return p == NullPoint::Control ? "control" : "midpoint"; }

void ScenarioProfile::validate() const {
    scenario.validate();
    if (designs.empty()) throw Error(ErrorCode::Configuration, name + ": no designs");
    if (burnin_options.empty()) throw Error(ErrorCode::Configuration, name + ": no burn-in options");
    if (n_sim_metrics < 1 || n_sim_oc < 1)
        throw Error(ErrorCode::Configuration, name + ": replication counts must be positive");
    for (const auto& d : designs) d.validate();
    for (const auto& o : burnin_options) {
        if (o.kind == BurnInKind::Fixed && (o.b < 2 || 2 * o.b > scenario.n))
            throw Error(ErrorCode::InfeasibleBurnIn,
                        name + ": fixed burn-in " + std::to_string(o.b) + " outside [2, n/2]");
    }
}

MetricOptions ScenarioProfile::metric_options() const {
    MetricOptions o;
    o.n_sim = n_sim_metrics;
    o.seed = seed;
    o.threads = threads;
    o.variant = delta_variant;
    o.mode = mode;
    return o;
}

TrialScenario ScenarioProfile::null_scenario() const {
    TrialScenario s = scenario;
    const double p = null_point == NullPoint::Control ? scenario.p0 : 0.5 * (scenario.p0 + scenario.p1);
    s.p0 = s.p1 = p;
    return s;
}

int resolve_burnin(const ScenarioProfile& profile, const DesignSpec& design,
                   const BurnInOption& option) {
    const int n = profile.scenario.n;
    switch (option.kind) {
        case BurnInKind::Min: return 2;
        case BurnInKind::Third: return static_cast<int>(std::lround(n / 3.0));
        case BurnInKind::Half: return n / 2;
        case BurnInKind::Fixed: return option.b;
        case BurnInKind::Formula: {
            const auto it = profile.formula_b.find(design.label);
            if (it != profile.formula_b.end()) return it->second;
            return run_metrics(profile, design).b;
        }
    }
    throw Error(ErrorCode::Configuration, "unknown burn-in option");
}

namespace {

std::vector<TrialRecord> replicate(const TrialScenario& scenario, const DesignSpec& design, int b,
                                   int n_sim, std::uint64_t seed, int threads) {
    return parallel_replications(n_sim, threads, [&](int m) {
        RngStream rng(seed, static_cast<std::uint64_t>(m));
        return trial_contributions(simulate_trial(scenario, design, b, rng), scenario);
    });
}

}  // namespace

OperatingCharacteristics run_oc(const ScenarioProfile& profile, const DesignSpec& design, int b) {
    // ER has no adaptive phase; its burn-in only fixes the first 2b
    // patients of an otherwise balanced permutation.
    if (!design.adaptive()) b = 2;
    const TrialScenario null_sc = profile.null_scenario();
    check_trial_setup(profile.scenario, design, b);
    check_trial_setup(null_sc, design, b);

    const std::string tag = design.label + "|" + std::to_string(b);
    const auto alt = replicate(profile.scenario, design, b, profile.n_sim_oc,
                               derive_seed(profile.seed, "alt|" + tag), profile.threads);
    const auto null = replicate(null_sc, design, b, profile.n_sim_oc,
                                derive_seed(profile.seed, "null|" + tag), profile.threads);
    return summarize_oc(null, alt);
}

OperatingCharacteristics run_oc(const ScenarioProfile& profile, const DesignSpec& design,
                                const BurnInOption& option) {
    return run_oc(profile, design, resolve_burnin(profile, design, option));
}

MetricReport run_metrics(const ScenarioProfile& profile, const DesignSpec& design) {
    MetricOptions o = profile.metric_options();
    o.seed = derive_seed(profile.seed, "metrics|" + design.label);
    return reactiveness_scenario(design, profile.scenario, o);
}

MetricReport run_metrics_global(const DesignSpec& design, int n, double n_half,
                                const MetricOptions& options) {
    MetricOptions o = options;
    o.seed = derive_seed(options.seed, "global|" + design.label + "|" + std::to_string(n));
    return reactiveness_global(design, n, n_half, o);
}

}  // namespace rarburn
