#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "rarburn/error.hpp"
#include "rarburn/parallel.hpp"
#include "rarburn/trial.hpp"

using namespace rarburn;

namespace {

std::vector<std::string> all_ids() {
    return {"er", "pbb", "brar-u", "brar-t", "n0", "n1", "r0", "r1", "ptw", "rptw"};
}

}  // namespace

TEST(BurnIn, ScheduleIsBalancedAndDeterministic) {
    for (int b : {2, 3, 10}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            RngStream r1(seed, 0), r2(seed, 0);
            const auto plan = make_burnin_schedule(b, r1);
            ASSERT_EQ(plan.schedule.size(), 2u * b);
            EXPECT_EQ(std::count(plan.schedule.begin(), plan.schedule.end(), 1), b);
            EXPECT_EQ(make_burnin_schedule(b, r2).schedule, plan.schedule);
        }
    }
}

TEST(BurnIn, ScheduleOrderVaries) {
    std::set<std::vector<Arm>> distinct;
    for (std::uint64_t m = 0; m < 200; ++m) {
        RngStream rng(5, m);
        distinct.insert(make_burnin_schedule(2, rng).schedule);
    }
    EXPECT_EQ(distinct.size(), 6u);  // all arrangements of 0011
}

TEST(BurnIn, RejectsInvalid) {
    RngStream rng(1, 0);
    EXPECT_THROW(make_burnin_schedule(1, rng), Error);
    TrialScenario sc{0.3, 0.5, 10};
    EXPECT_THROW(simulate_trial(sc, make_design("pbb"), 6, rng), Error);
    try {
        simulate_trial(sc, make_design("pbb"), 6, rng);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InfeasibleBurnIn);
    }
    TrialScenario odd{0.3, 0.5, 11};
    EXPECT_THROW(simulate_trial(odd, make_design("er"), 2, rng), Error);
    TrialScenario tiny{0.3, 0.5, 3};
    EXPECT_THROW(tiny.validate(), Error);
}

TEST(Trial, EqualRandomizationIsExactlyBalanced) {
    TrialScenario sc{0.2, 0.6, 10};
    for (std::uint64_t m = 0; m < 100; ++m) {
        RngStream rng(3, m);
        const auto path = simulate_trial(sc, make_design("er"), 2, rng);
        EXPECT_EQ(path.count(0), 5);
        EXPECT_EQ(path.count(1), 5);
    }
}

TEST(Trial, OracleSendsEveryAdaptivePatientToBetterArm) {
    TrialScenario sc{0.3, 0.6, 10};
    for (std::uint64_t m = 0; m < 50; ++m) {
        RngStream rng(4, m);
        const auto path = simulate_trial(sc, make_design("pbb"), 2, rng);
        EXPECT_EQ(path.count(1), 8);
        EXPECT_EQ(path.count(0), 2);
    }
}

// Play-the-winner traced by hand on a fixed tape. Burn-in 0,1,1,0 with
// outcomes 1,0,1,0; patient 4 (arm 0) failed, so patient 5 switches to arm 1.
TEST(Trial, PlayTheWinnerHandTrace) {
    TrialScenario sc{0.5, 0.5, 10};
    BurnInPlan plan{2, {0, 1, 1, 0}};
    const std::vector<int> tape{1, 0, 1, 0, 1, 1, 0, 1, 0, 0};
    RngStream rng(0, 0);
    const auto path = run_trial(sc, make_design("ptw"), plan, rng,
                                [&](Arm, int i) { return tape[i - 1]; });
    // 5: last (arm 0, fail) -> 1; 6: (1, success) -> 1; 7: (1, success) -> 1;
    // 8: (1, fail) -> 0; 9: (0, success) -> 0; 10: (0, fail) -> 1.
    const std::vector<Arm> expected{0, 1, 1, 0, 1, 1, 1, 0, 0, 1};
    EXPECT_EQ(path.assignments(), expected);
}

TEST(Trial, InvariantsHoldForEveryDesign) {
    const std::vector<TrialScenario> scenarios{{0.12, 0.37, 86}, {0.9, 0.2, 40}, {0.0, 1.0, 20},
                                               {0.5, 0.5, 30}};
    for (const auto& id : all_ids()) {
        const auto design = make_design(id);
        for (const auto& sc : scenarios) {
            for (int b : {2, 5}) {
                for (std::uint64_t m = 0; m < 20; ++m) {
                    RngStream rng(11, m);
                    const auto path = simulate_trial(sc, design, b, rng);
                    ASSERT_TRUE(path.consistent()) << id;
                    ASSERT_EQ(path.size(), sc.n);
                    ASSERT_EQ(path.count(0) + path.count(1), sc.n);
                    ASSERT_GE(path.count(0), b);
                    ASSERT_GE(path.count(1), b);
                    const auto& a = path.assignments();
                    ASSERT_EQ(std::count(a.begin(), a.begin() + 2 * b, 1), b) << id;
                    ASSERT_LE(path.successes(0), path.count(0));
                    ASSERT_LE(path.successes(1), path.count(1));
                }
            }
        }
    }
}

TEST(Trial, DeterministicAcrossThreadCounts) {
    TrialScenario sc{0.12, 0.37, 86};
    for (const auto& id : all_ids()) {
        const auto design = make_design(id);
        auto run = [&](int threads) {
            return parallel_replications(64, threads, [&](int m) {
                RngStream rng(77, static_cast<std::uint64_t>(m));
                return simulate_trial(sc, design, 2, rng).assignments();
            });
        };
        const auto one = run(1);
        EXPECT_EQ(one, run(3)) << id;
        EXPECT_EQ(one, run(8)) << id;
    }
}

TEST(Trial, MarginalSuccessFrequencyMatchesRates) {
    TrialScenario sc{0.3, 0.7, 100};
    long s[2] = {0, 0}, c[2] = {0, 0};
    for (std::uint64_t m = 0; m < 1000; ++m) {  // 1e5 outcomes
        RngStream rng(8, m);
        const auto path = simulate_trial(sc, make_design("er"), 2, rng);
        for (Arm k : {0, 1}) {
            s[k] += path.successes(k);
            c[k] += path.count(k);
        }
    }
    for (int k : {0, 1}) {
        const double p = k ? sc.p1 : sc.p0;
        const double se = std::sqrt(p * (1 - p) / c[k]);
        EXPECT_NEAR(static_cast<double>(s[k]) / c[k], p, 3 * se);
    }
}

TEST(Parallel, PropagatesExceptions) {
    EXPECT_THROW(parallel_replications(100, 4,
                                       [](int i) {
                                           if (i == 57) throw std::runtime_error("boom");
                                           return i;
                                       }),
                 std::runtime_error);
}
