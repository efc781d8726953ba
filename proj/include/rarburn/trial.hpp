#pragma once

#include <functional>

#include "rarburn/design.hpp"
#include "rarburn/rng.hpp"
#include "rarburn/scenario.hpp"

namespace rarburn {

// Random allocation rule over the first 2b patients: a uniformly random
// permutation of b zeros and b ones. Throws Error(InvalidBurnIn) if b < 2.
BurnInPlan make_burnin_schedule(int b, RngStream& rng);

// Supplies the response of the patient_index-th patient (1-based) on `arm`.
using OutcomeSource = std::function<int(Arm arm, int patient_index)>;

// Runs one trial: the burn-in schedule fixes patients 1..2b, after which each
// patient is allocated by the design from all data accrued so far. The
// allocation draw for each adaptive patient comes from `rng`; outcomes come
// from `outcome`.
TrialPath run_trial(const TrialScenario& scenario, const DesignSpec& design,
                    const BurnInPlan& plan, RngStream& rng, const OutcomeSource& outcome);

// run_trial with a random burn-in schedule and Bernoulli(p_arm) outcomes, all
// drawn from the one stream.
TrialPath simulate_trial(const TrialScenario& scenario, const DesignSpec& design, int b,
                         RngStream& rng);

// Validates (scenario, design, b) together; throws on the first violation.
void check_trial_setup(const TrialScenario& scenario, const DesignSpec& design, int b);

}  // namespace rarburn
