#include "rarburn/design.hpp"

#include <cmath>
#include <string>

#include "rarburn/error.hpp"

namespace rarburn {

// ---------------------------------------------------------------------------
// Targets

double target_neyman_wald(double p0, double p1) {
    const double sd0 = std::sqrt(p0 * (1.0 - p0));
    const double sd1 = std::sqrt(p1 * (1.0 - p1));
    if (sd0 + sd1 == 0.0) return 0.5;
    return sd1 / (sd0 + sd1);
}

double target_rshir_wald(double p0, double p1) {
    const double r0 = std::sqrt(p0);
    const double r1 = std::sqrt(p1);
    if (r0 + r1 == 0.0) return 0.5;
    return r1 / (r0 + r1);
}

double AllocationTarget::estimate(int successes, int count) const {
    switch (estimator) {
        case Estimator::MLE:
            return count > 0 ? static_cast<double>(successes) / count : 0.0;
        case Estimator::HalfShrink:
            return (successes + 0.5) / (count + 1.0);
    }
    return 0.0;
}

AllocationTarget AllocationTarget::neyman_wald() {
    return {TargetId::NeymanWald, target_neyman_wald, Estimator::MLE, false};
}

AllocationTarget AllocationTarget::rshir_wald() {
    return {TargetId::RshirWald, target_rshir_wald, Estimator::MLE, false};
}

// The score-test optimal proportions are supplied through custom(); until
// then these run on their Wald counterparts and say so in every output.
AllocationTarget AllocationTarget::neyman_score() {
    return {TargetId::NeymanScore, target_neyman_wald, Estimator::MLE, true};
}

AllocationTarget AllocationTarget::rshir_score() {
    return {TargetId::RshirScore, target_rshir_wald, Estimator::MLE, true};
}

AllocationTarget AllocationTarget::custom(TargetId id, RhoFunction fn) {
    if (!fn) throw Error(ErrorCode::Configuration, "custom target needs a proportion function");
    return {id, std::move(fn), Estimator::MLE, false};
}

// ---------------------------------------------------------------------------
// Allocation rules

double brar_tuned_prob(double posterior, int patient_index, int n, const TuningSchedule& tuning) {
    const double c = tuning.exponent(patient_index, n);
    if (c == 0.0) return 0.5;
    const double up = std::pow(posterior, c);
    const double down = std::pow(1.0 - posterior, c);
    return up / (up + down);
}

double erade_prob(double target_rho, double current_prop, double alpha) {
    if (current_prop > target_rho) return alpha * target_rho;
    if (current_prop < target_rho) return 1.0 - alpha * (1.0 - target_rho);
    return target_rho;
}

Arm ptw_next(Arm last_arm, int last_outcome) {
    return last_outcome == 1 ? last_arm : static_cast<Arm>(1 - last_arm);
}

Arm rptw_step(const UrnState& urn, RngStream& rng) {
    return rng.uniform() < urn.prob_arm1() ? Arm{1} : Arm{0};
}

UrnState rptw_update(UrnState urn, Arm arm, int outcome) {
    // A success adds a ball of the arm's own type, a failure one of the other.
    const Arm ball = outcome == 1 ? arm : static_cast<Arm>(1 - arm);
    ++urn.balls[ball];
    return urn;
}

// ---------------------------------------------------------------------------
// Design specs

void DesignSpec::validate() const {
    if (kind == DesignKind::EradeTarget && !target)
        throw Error(ErrorCode::Configuration, label + ": target-allocation design needs a target");
    if (target && !target->rho_fn)
        throw Error(ErrorCode::Configuration, label + ": target has no proportion function");
    if (!(erade_alpha >= 0.0 && erade_alpha < 1.0))
        throw Error(ErrorCode::Configuration, label + ": ERADE alpha must lie in [0, 1)");
    if (!(prior.a0 > 0 && prior.b0 > 0 && prior.a1 > 0 && prior.b1 > 0))
        throw Error(ErrorCode::Configuration, label + ": prior parameters must be positive");
    if (!(tuning.scale >= 0.0) || !std::isfinite(tuning.scale))
        throw Error(ErrorCode::Configuration, label + ": tuning scale must be nonnegative");
}

std::vector<std::string> DesignSpec::warnings() const {
    std::vector<std::string> out;
    if (target && target->placeholder) {
        const bool neyman = target->id == TargetId::NeymanScore;
        out.push_back(label + " runs on a placeholder target (the " +
                      (neyman ? "Neyman" : "RSHIR") +
                      " Wald proportion); supply the score-test proportion as a custom target");
    }
    return out;
}

namespace {

DesignSpec erade_design(std::string label, AllocationTarget target, ReportedTests tests) {
    DesignSpec d;
    d.kind = DesignKind::EradeTarget;
    d.label = std::move(label);
    d.target = std::move(target);
    d.reported = tests;
    return d;
}

DesignSpec simple_design(DesignKind kind, std::string label) {
    DesignSpec d;
    d.kind = kind;
    d.label = std::move(label);
    return d;
}

}  // namespace

DesignSpec make_design(std::string_view id) {
    if (id == "er") return simple_design(DesignKind::ER, "ER");
    if (id == "pbb") return simple_design(DesignKind::PBB, "PBB");
    if (id == "brar-u") return simple_design(DesignKind::BrarU, "BRAR (U)");
    if (id == "brar-t") return simple_design(DesignKind::BrarT, "BRAR (T)");
    if (id == "n0") return erade_design("N0", AllocationTarget::neyman_score(), ReportedTests::ScoreOnly);
    if (id == "n1") return erade_design("N1", AllocationTarget::neyman_wald(), ReportedTests::WaldOnly);
    if (id == "r0") return erade_design("R0", AllocationTarget::rshir_score(), ReportedTests::ScoreOnly);
    if (id == "r1") return erade_design("R1", AllocationTarget::rshir_wald(), ReportedTests::WaldOnly);
    if (id == "ptw") return simple_design(DesignKind::PTW, "PTW");
    if (id == "rptw" || id == "rpw") return simple_design(DesignKind::RPTW, "RPW");
    throw Error(ErrorCode::Configuration, "unknown design '" + std::string(id) + "'");
}

std::vector<DesignSpec> standard_designs() {
    std::vector<DesignSpec> out;
    for (const char* id : {"er", "pbb", "brar-u", "brar-t", "n0", "n1", "r0", "r1", "ptw", "rptw"})
        out.push_back(make_design(id));
    return out;
}

std::string design_id(const DesignSpec& design) {
    switch (design.kind) {
        case DesignKind::ER: return "er";
        case DesignKind::PBB: return "pbb";
        case DesignKind::BrarU: return "brar-u";
        case DesignKind::BrarT: return "brar-t";
        case DesignKind::PTW: return "ptw";
        case DesignKind::RPTW: return "rptw";
        case DesignKind::EradeTarget: break;
    }
    switch (design.target ? design.target->id : TargetId::Custom) {
        case TargetId::NeymanWald: return "n1";
        case TargetId::RshirWald: return "r1";
        case TargetId::NeymanScore: return "n0";
        case TargetId::RshirScore: return "r0";
        case TargetId::Custom: break;
    }
    return "custom";
}

// ---------------------------------------------------------------------------
// Sequential state

AllocationState::AllocationState(const DesignSpec& design, const TrialScenario& scenario)
    : design_(&design), scenario_(&scenario) {}

void AllocationState::observe(Arm arm, int outcome, bool in_burnin) {
    if (design_->kind == DesignKind::RPTW && (!in_burnin || design_->urn_learns_from_burnin))
        urn_ = rptw_update(urn_, arm, outcome);
}

double AllocationState::prob_arm1(const TrialPath& history) const {
    const DesignSpec& d = *design_;
    const int seen = history.size();
    const int patient = seen + 1;
    switch (d.kind) {
        case DesignKind::ER: {
            // Sequential completion of a random permutation of n/2 per arm.
            const int remaining = scenario_->n - seen;
            const int ones_left = scenario_->n / 2 - history.count(1);
            return remaining > 0 ? static_cast<double>(ones_left) / remaining : 0.5;
        }
        case DesignKind::PBB:
            return scenario_->p1 >= scenario_->p0 ? 1.0 : 0.0;
        case DesignKind::BrarU:
            return thompson_prob(history.successes(0), history.count(0), history.successes(1),
                                 history.count(1), d.prior);
        case DesignKind::BrarT: {
            const double post = thompson_prob(history.successes(0), history.count(0),
                                              history.successes(1), history.count(1), d.prior);
            return brar_tuned_prob(post, patient, scenario_->n, d.tuning);
        }
        case DesignKind::EradeTarget: {
            const AllocationTarget& t = *d.target;
            const double p0_hat = t.estimate(history.successes(0), history.count(0));
            const double p1_hat = t.estimate(history.successes(1), history.count(1));
            const double rho_hat = t.rho(p0_hat, p1_hat);
            const double current = seen > 0 ? static_cast<double>(history.count(1)) / seen : 0.5;
            return erade_prob(rho_hat, current, d.erade_alpha);
        }
        case DesignKind::PTW: {
            if (seen == 0) return 0.5;
            const Arm next = ptw_next(history.assignments().back(), history.outcomes().back());
            return next == 1 ? 1.0 : 0.0;
        }
        case DesignKind::RPTW:
            return urn_.prob_arm1();
    }
    throw Error(ErrorCode::Configuration, "unknown design kind");
}

double alloc_prob(const DesignSpec& design, const TrialScenario& scenario,
                  const TrialPath& history, int b) {
    AllocationState state(design, scenario);
    for (int i = 0; i < history.size(); ++i)
        state.observe(history.assignments()[i], history.outcomes()[i], i < 2 * b);
    return state.prob_arm1(history);
}

std::optional<double> limiting_proportion(const DesignSpec& design, double p0, double p1) {
    switch (design.kind) {
        case DesignKind::ER:
            return 0.5;
        case DesignKind::PBB:
            return p1 >= p0 ? 1.0 : 0.0;
        case DesignKind::BrarU:
        case DesignKind::BrarT:
            // Posterior sampling concentrates on the better arm; under equal
            // rates the limit is random.
            if (p1 > p0) return 1.0;
            if (p1 < p0) return 0.0;
            return std::nullopt;
        case DesignKind::EradeTarget:
            return design.target->rho(p0, p1);
        case DesignKind::PTW:
        case DesignKind::RPTW: {
            const double q0 = 1.0 - p0;
            const double q1 = 1.0 - p1;
            if (q0 + q1 == 0.0) return 0.5;
            return q0 / (q0 + q1);
        }
    }
    return std::nullopt;
}

}  // namespace rarburn
