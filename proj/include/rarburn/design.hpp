#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rarburn/rng.hpp"
#include "rarburn/scenario.hpp"

namespace rarburn {

enum class DesignKind { ER, PBB, BrarU, BrarT, EradeTarget, PTW, RPTW };

enum class TargetId { NeymanWald, RshirWald, NeymanScore, RshirScore, Custom };

// How the plug-in response rates fed to a target are estimated.
enum class Estimator {
    MLE,         // S_k / n_k, with 0/0 read as 0
    HalfShrink,  // (S_k + 0.5) / (n_k + 1)
};

// Which final-analysis test a design is meant to be paired with; only
// affects which table columns are populated.
enum class ReportedTests { Both, WaldOnly, ScoreOnly };

using RhoFunction = std::function<double(double p0, double p1)>;

struct AllocationTarget {
    TargetId id = TargetId::NeymanWald;
    RhoFunction rho_fn;
    Estimator estimator = Estimator::MLE;
    // Set for the score-test targets while they run on the Wald stand-in.
    bool placeholder = false;

    double rho(double p0, double p1) const { return rho_fn(p0, p1); }
    double estimate(int successes, int count) const;

    static AllocationTarget neyman_wald();
    static AllocationTarget rshir_wald();
    static AllocationTarget neyman_score();
    static AllocationTarget rshir_score();
    static AllocationTarget custom(TargetId id, RhoFunction fn);
};

struct BetaPrior {
    double a0 = 1.0, b0 = 1.0, a1 = 1.0, b1 = 1.0;
};

// Exponent c(i) = scale * i / n applied to the posterior probability by the
// tuned Bayesian design; scale 0.5 gives the usual i / (2n).
struct TuningSchedule {
    double scale = 0.5;

    double exponent(int patient_index, int n) const {
        return scale * static_cast<double>(patient_index) / static_cast<double>(n);
    }
};

struct DesignSpec {
    DesignKind kind = DesignKind::ER;
    std::string label = "ER";
    std::optional<AllocationTarget> target;
    double erade_alpha = 0.5;
    TuningSchedule tuning;
    BetaPrior prior;
    bool urn_learns_from_burnin = true;
    ReportedTests reported = ReportedTests::Both;

    void validate() const;
    bool adaptive() const noexcept { return kind != DesignKind::ER; }
    // Provenance warnings that must accompany any output from this design.
    std::vector<std::string> warnings() const;
};

// Builds one of the ten standard designs from its command-line id:
// er, pbb, brar-u, brar-t, n0, n1, r0, r1, ptw, rptw (alias rpw).
DesignSpec make_design(std::string_view id);
std::vector<DesignSpec> standard_designs();
std::string design_id(const DesignSpec& design);

// P(P1 > P0) for independent Beta posteriors
//   P_k ~ Beta(prior_ak + S_k, prior_bk + n_k - S_k).
// Exact finite sum for integer parameters, tanh-sinh quadrature otherwise.
double thompson_prob(int s0, int n0, int s1, int n1, const BetaPrior& prior = {});

// P(X1 > X0) for X0 ~ Beta(a0, b0), X1 ~ Beta(a1, b1).
double beta_superiority(double a0, double b0, double a1, double b1);

double brar_tuned_prob(double posterior_superiority, int patient_index, int n,
                       const TuningSchedule& tuning = {});

// ERADE biased coin steering the current proportion towards the target.
double erade_prob(double target_rho, double current_prop, double alpha);

double target_neyman_wald(double p0, double p1);
double target_rshir_wald(double p0, double p1);

Arm ptw_next(Arm last_arm, int last_outcome);

struct UrnState {
    std::array<int, 2> balls{1, 1};

    int total() const noexcept { return balls[0] + balls[1]; }
    double prob_arm1() const noexcept {
        return static_cast<double>(balls[1]) / static_cast<double>(total());
    }
};

Arm rptw_step(const UrnState& urn, RngStream& rng);
UrnState rptw_update(UrnState urn, Arm arm, int outcome);

// Sequential allocation state for one design within one trial. The engine
// feeds every observed patient through observe() and asks for the next
// patient's probability of arm 1.
class AllocationState {
public:
    AllocationState(const DesignSpec& design, const TrialScenario& scenario);

    void observe(Arm arm, int outcome, bool in_burnin);
    double prob_arm1(const TrialPath& history) const;

    const UrnState& urn() const noexcept { return urn_; }

private:
    const DesignSpec* design_;
    const TrialScenario* scenario_;
    UrnState urn_;
};

// Probability that the next patient goes to arm 1, given the accrued history
// of a trial that used b burn-in patients per arm.
double alloc_prob(const DesignSpec& design, const TrialScenario& scenario,
                  const TrialPath& history, int b);

// Limit of n1(i)/i for the design at true rates (p0, p1), when known.
std::optional<double> limiting_proportion(const DesignSpec& design, double p0, double p1);

}  // namespace rarburn
