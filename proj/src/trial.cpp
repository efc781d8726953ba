#include "rarburn/trial.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "rarburn/error.hpp"

namespace rarburn {

BurnInPlan make_burnin_schedule(int b, RngStream& rng) {
    if (b < 2)
        throw Error(ErrorCode::InvalidBurnIn,
                    "burn-in must allocate at least 2 patients per arm (got " + std::to_string(b) + ")");
    BurnInPlan plan{b, std::vector<Arm>(2 * static_cast<std::size_t>(b), 0)};
    std::fill(plan.schedule.begin() + b, plan.schedule.end(), Arm{1});
    for (std::size_t i = plan.schedule.size() - 1; i > 0; --i) {
        const std::size_t j = rng.below(static_cast<std::uint32_t>(i + 1));
        std::swap(plan.schedule[i], plan.schedule[j]);
    }
    return plan;
}

void check_trial_setup(const TrialScenario& scenario, const DesignSpec& design, int b) {
    scenario.validate();
    design.validate();
    if (b < 2)
        throw Error(ErrorCode::InvalidBurnIn,
                    "burn-in must allocate at least 2 patients per arm (got " + std::to_string(b) + ")");
    if (2 * b > scenario.n)
        throw Error(ErrorCode::InfeasibleBurnIn,
                    "burn-in of " + std::to_string(b) + " per arm exceeds trial size " +
                        std::to_string(scenario.n));
    if (design.kind == DesignKind::ER && scenario.n % 2 != 0)
        throw Error(ErrorCode::InvalidScenario, "equal randomization needs an even trial size");
}

TrialPath run_trial(const TrialScenario& scenario, const DesignSpec& design,
                    const BurnInPlan& plan, RngStream& rng, const OutcomeSource& outcome) {
    check_trial_setup(scenario, design, plan.b);

    TrialPath path(scenario.n);
    AllocationState state(design, scenario);
    const int burnin = 2 * plan.b;
    for (int i = 0; i < scenario.n; ++i) {
        Arm arm;
        if (i < burnin) {
            arm = plan.schedule[i];
        } else {
            arm = rng.uniform() < state.prob_arm1(path) ? Arm{1} : Arm{0};
        }
        const int y = outcome(arm, i + 1);
        path.push(arm, y);
        state.observe(arm, y, i < burnin);
    }
    return path;
}

TrialPath simulate_trial(const TrialScenario& scenario, const DesignSpec& design, int b,
                         RngStream& rng) {
    check_trial_setup(scenario, design, b);
    const BurnInPlan plan = make_burnin_schedule(b, rng);
    const double p[2] = {scenario.p0, scenario.p1};
    return run_trial(scenario, design, plan, rng,
                     [&](Arm arm, int) { return rng.bernoulli(p[arm]) ? 1 : 0; });
}

}  // namespace rarburn
