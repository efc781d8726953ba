#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rarburn/error.hpp"
#include "rarburn/metrics.hpp"

using namespace rarburn;

TEST(Delta, PublishedValues) {
    EXPECT_NEAR(standardized_effect(0.7, 0.9, DeltaVariant::RSS), 0.3651, 5e-4);
    EXPECT_NEAR(standardized_effect(0.4, 0.6, DeltaVariant::RSS), 0.2887, 5e-4);
    EXPECT_NEAR(standardized_effect(0.12, 0.37, DeltaVariant::SSD), 0.3095, 5e-4);
    EXPECT_NEAR(standardized_effect(0.941, 0.991, DeltaVariant::SSD), 0.1515, 5e-4);
}

TEST(Delta, DegenerateCases) {
    EXPECT_TRUE(std::isinf(standardized_effect(0.0, 1.0, DeltaVariant::RSS)));
    EXPECT_TRUE(std::isinf(standardized_effect(1.0, 0.0, DeltaVariant::SSD)));
    EXPECT_EQ(standardized_effect(0.3, 0.3, DeltaVariant::RSS), 0.0);
    EXPECT_THROW(standardized_effect(1.0, 1.0, DeltaVariant::RSS), Error);
    EXPECT_THROW(standardized_effect(0.0, 0.0, DeltaVariant::SSD), Error);
    EXPECT_THROW(standardized_effect(-0.1, 0.5, DeltaVariant::SSD), Error);
}

TEST(Delta, SymmetricAndOrdered) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.001, 0.999);
    for (int i = 0; i < 1000; ++i) {
        const double a = u(gen), b = u(gen);
        for (auto v : {DeltaVariant::RSS, DeltaVariant::SSD})
            EXPECT_DOUBLE_EQ(standardized_effect(a, b, v), standardized_effect(b, a, v));
        EXPECT_LE(standardized_effect(a, b, DeltaVariant::SSD), standardized_effect(a, b, DeltaVariant::RSS));
    }
    // With one arm at 1/2 the effect never exceeds 1.
    for (int j = 0; j <= 200; ++j) EXPECT_LE(standardized_effect(0.5, j / 200.0, DeltaVariant::RSS), 1.0 + 1e-12);
    EXPECT_DOUBLE_EQ(standardized_effect(0.5, 0.0, DeltaVariant::RSS), 1.0);
}

TEST(Budget, Values) {
    EXPECT_NEAR(burnin_budget(86, 10000), 85.27, 0.01);
    EXPECT_NEAR(burnin_budget(360, 10000), 347.49, 0.05);
    EXPECT_DOUBLE_EQ(burnin_budget(1000, 1000), 500.0);
}

TEST(Formula, Arithmetic) {
    EXPECT_EQ(recommend_burnin(86, 10000, 0.0668, 0.3095).b, 18);
    EXPECT_EQ(recommend_burnin(86, 10000, 0.0, 0.3095).b, 2);
    EXPECT_EQ(recommend_burnin(1000, 1000, 0.3, 0.0).b, 250);
    EXPECT_EQ(recommend_burnin(1000, 1000, 0.0, 0.0).b, 250);  // 0^0 = 1
    EXPECT_EQ(recommend_burnin(100, 1000, 0.9, std::numeric_limits<double>::infinity()).b, 2);
    const auto capped = recommend_burnin(4, 1e9, 1.0, 0.0);
    EXPECT_EQ(capped.b, 2);
    const auto clamped = recommend_burnin(100, 1000, 1.4, 0.5);
    EXPECT_EQ(clamped.risk, 1.0);
    EXPECT_FALSE(clamped.warnings.empty());
}

TEST(Formula, Monotone) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const int n = 10 + static_cast<int>(u(gen) * 1000);
        const double nh = 100 + u(gen) * 10000;
        const double r1 = u(gen), r2 = u(gen), d1 = u(gen) * 3, d2 = u(gen) * 3;
        const auto lo_r = std::min(r1, r2), hi_r = std::max(r1, r2);
        const auto lo_d = std::min(d1, d2), hi_d = std::max(d1, d2);
        EXPECT_LE(recommend_burnin(n, nh, lo_r, d1).raw, recommend_burnin(n, nh, hi_r, d1).raw);
        EXPECT_GE(recommend_burnin(n, nh, r1, lo_d).raw, recommend_burnin(n, nh, r1, hi_d).raw);
        const int b = recommend_burnin(n, nh, r1, d1).b;
        EXPECT_GE(b, 2);
        EXPECT_LE(b, n / 2);
    }
}

TEST(AllocationError, Fixtures) {
    EXPECT_NEAR(final_allocation_error(0.7, 0.6), 0.1, 1e-12);
    EXPECT_NEAR(final_allocation_error(0.3, 0.6), 0.2, 1e-12);
    EXPECT_EQ(final_allocation_error(0.55, 0.6), 0.0);
    EXPECT_EQ(final_allocation_error(0.5, 0.5), 0.0);
    EXPECT_NEAR(final_allocation_error(0.42, 0.5), 0.08, 1e-12);
    EXPECT_NEAR(final_allocation_error(0.61, 0.5), 0.11, 1e-12);
    // Mirror below 1/2: arm-0 share should lie in [1/2, 1 - rho].
    EXPECT_EQ(final_allocation_error(0.0, 0.0), 0.0);
    EXPECT_EQ(final_allocation_error(0.45, 0.4), 0.0);
    EXPECT_NEAR(final_allocation_error(0.3, 0.4), 0.1, 1e-12);
    EXPECT_NEAR(final_allocation_error(0.6, 0.4), 0.1, 1e-12);
    EXPECT_GT(final_allocation_error(0.3, 0.6), final_allocation_error(0.7, 0.6));
}

TEST(AllocationError, ContinuousAtBreakpoints) {
    const double h = 1e-9;
    for (double rho : {0.1, 0.3, 0.5, 0.6, 0.95, 1.0, 0.0}) {
        for (double x : {0.5, rho}) {
            const double lo = final_allocation_error(x - h, rho), hi = final_allocation_error(x + h, rho);
            EXPECT_NEAR(lo, hi, 1e-8) << rho << " at " << x;
            EXPECT_NEAR(final_allocation_error(x, rho), lo, 1e-8);
        }
    }
}

namespace {

TrialPath path_from(const std::vector<Arm>& arms) {
    TrialPath p;
    for (Arm a : arms) p.push(a, 0);
    return p;
}

// Term-by-term evaluation of the slope with the half-patient floor.
double slope_oracle(const std::vector<Arm>& arms, double rho) {
    const double n = static_cast<double>(arms.size());
    double n1 = arms[0], sum = 0;
    for (std::size_t i = 2; i <= arms.size(); ++i) {
        n1 += arms[i - 1];
        double dev = std::fabs(n1 / i - rho);
        if (dev < 1 / (2 * n)) dev = 1 / (2 * n);
        sum += -std::log(dev / std::fabs(0.5 - rho)) / std::log(static_cast<double>(i));
    }
    return sum / n;
}

}  // namespace

TEST(Slope, HandComputedPath) {
    // Running proportions 1, 1/2, 2/3, 1/2.
    const std::vector<Arm> arms{1, 0, 1, 0};
    EXPECT_NEAR(geometric_slope(path_from(arms), 0.75), slope_oracle(arms, 0.75), 1e-14);
    EXPECT_NEAR(geometric_slope(path_from(arms), 0.75), std::log(2.0) / std::log(3.0) / 4, 1e-14);
}

TEST(Slope, RandomPathsAgreeWithOracle) {
    std::mt19937_64 gen(8);
    for (int k = 0; k < 200; ++k) {
        std::vector<Arm> arms(2 + gen() % 100);
        for (auto& a : arms) a = gen() % 2;
        const double rho = (gen() % 1000) / 1000.0;
        if (rho == 0.5) continue;
        EXPECT_NEAR(geometric_slope(path_from(arms), rho), slope_oracle(arms, rho), 1e-12);
    }
}

TEST(Slope, ZeroAtHalfAndOnBalancedPath) {
    const std::vector<Arm> arms{1, 0, 0, 1, 1, 0, 1, 1};
    EXPECT_EQ(geometric_slope(path_from(arms), 0.5), 0.0);
    TrialPath balanced;
    for (int i = 0; i < 10; ++i) balanced.push(i % 2 ? 1 : 0, 0);
    // Only even prefixes sit exactly on 1/2; each of those terms is 0.
    double expected = 0;
    for (int i = 3; i <= 10; i += 2) {
        const double prop = ((i - 1) / 2.0) / i;
        expected += -std::log(std::fabs(prop - 0.8) / 0.3) / std::log(static_cast<double>(i));
    }
    EXPECT_NEAR(geometric_slope(balanced, 0.8), expected / 10, 1e-14);
}

TEST(Reactiveness, EqualRandomizationIsZero) {
    MetricOptions o;
    o.n_sim = 200;
    const auto g = reactiveness_global(make_design("er"), 200, 1000, o);
    EXPECT_EQ(g.r, 0.0);
    EXPECT_EQ(g.eps, 0.0);
    const auto s = reactiveness_scenario(make_design("er"), {0.12, 0.37, 86, 1000}, o);
    EXPECT_EQ(s.r, 0.0);
    EXPECT_EQ(s.b, 2);
}

TEST(Reactiveness, ReportInvariants) {
    MetricOptions o;
    o.n_sim = 100;
    for (auto mode : {BurnInMode::PlugIn, BurnInMode::PerReplication}) {
        o.mode = mode;
        for (const auto& d : standard_designs()) {
            const auto m = reactiveness_scenario(d, {0.12, 0.37, 86, 1000}, o);
            EXPECT_GE(m.r, 0.0);
            EXPECT_EQ(m.r, std::max({0.0, m.r_tilde_rho, m.r_tilde_0, m.r_tilde_1}));
            EXPECT_GE(m.b, 2);
            EXPECT_LE(m.b, 43);
            EXPECT_GT(m.bp, 0.0);
            EXPECT_LE(m.bp, 1.0);
            if (mode == BurnInMode::PlugIn && d.adaptive()) EXPECT_DOUBLE_EQ(m.bp, 2.0 * m.b / 86);
        }
    }
}

TEST(Reactiveness, UnknownLimitNeedsOverride) {
    MetricOptions o;
    o.n_sim = 20;
    EXPECT_THROW(reactiveness_scenario(make_design("brar-u"), {0.3, 0.3, 50, 1000}, o), Error);
    o.rho_override = 0.5;
    EXPECT_NO_THROW(reactiveness_scenario(make_design("brar-u"), {0.3, 0.3, 50, 1000}, o));
}

TEST(Parse, VariantsAndModes) {
    EXPECT_EQ(parse_delta_variant("ssd"), DeltaVariant::SSD);
    EXPECT_EQ(parse_burnin_mode("perrep"), BurnInMode::PerReplication);
    EXPECT_THROW(parse_delta_variant("x"), Error);
    EXPECT_THROW(parse_burnin_mode("x"), Error);
}
