#include "rarburn/inference.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>

#include "rarburn/error.hpp"

namespace rarburn {

namespace {

void require_nonempty(int n0, int n1) {
    if (n0 < 1 || n1 < 1)
        throw Error(ErrorCode::DegenerateArm, "test statistics need at least one patient per arm");
}

ZStat ratio(double diff, double variance) {
    if (variance > 0.0) return diff / std::sqrt(variance);
    if (diff == 0.0) return std::nullopt;
    return diff > 0 ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
}

bool rejects(const ZStat& z, double critical) { return z && std::abs(*z) > critical; }

struct MeanSe {
    double mean = 0;
    double se = 0;
};

template <class Get>
MeanSe mean_se(std::span<const TrialRecord> records, Get get) {
    if (records.empty()) return {};
    double sum = 0;
    for (const auto& r : records) sum += get(r);
    const double n = static_cast<double>(records.size());
    const double mean = sum / n;
    double ss = 0;
    for (const auto& r : records) {
        const double d = get(r) - mean;
        ss += d * d;
    }
    const double var = records.size() > 1 ? ss / (n - 1) : 0.0;
    return {mean, std::sqrt(var / n)};
}

}  // namespace

ZStat wald_z(int s0, int n0, int s1, int n1) {
    require_nonempty(n0, n1);
    const double p0 = static_cast<double>(s0) / n0;
    const double p1 = static_cast<double>(s1) / n1;
    return ratio(p1 - p0, p0 * (1 - p0) / n0 + p1 * (1 - p1) / n1);
}

ZStat score_z(int s0, int n0, int s1, int n1) {
    require_nonempty(n0, n1);
    const double p0 = static_cast<double>(s0) / n0;
    const double p1 = static_cast<double>(s1) / n1;
    const double pooled = static_cast<double>(s0 + s1) / (n0 + n1);
    return ratio(p1 - p0, pooled * (1 - pooled) * (1.0 / n0 + 1.0 / n1));
}

double normal_critical(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorCode::InvalidScenario, "alpha must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - alpha / 2.0);
}

TestResult evaluate_tests(int s0, int n0, int s1, int n1, double alpha) {
    TestResult out;
    out.critical = normal_critical(alpha);
    out.z1 = wald_z(s0, n0, s1, n1);
    out.z0 = score_z(s0, n0, s1, n1);
    out.reject1 = rejects(out.z1, out.critical);
    out.reject0 = rejects(out.z0, out.critical);
    return out;
}

TrialRecord trial_contributions(const TrialPath& path, const TrialScenario& scenario) {
    const int n0 = path.count(0), n1 = path.count(1);
    const int s0 = path.successes(0), s1 = path.successes(1);
    const TestResult tests = evaluate_tests(s0, n0, s1, n1, scenario.alpha);

    TrialRecord rec;
    rec.reject1 = tests.reject1;
    rec.reject0 = tests.reject0;
    rec.prop_arm1 = path.proportion_arm1();
    rec.best_arm_prop = scenario.p1 > scenario.p0 ? rec.prop_arm1 : 1.0 - rec.prop_arm1;
    const double diff_hat = static_cast<double>(s1) / n1 - static_cast<double>(s0) / n0;
    const double err = diff_hat - (scenario.p1 - scenario.p0);
    rec.squared_error = err * err;
    return rec;
}

OperatingCharacteristics summarize_oc(std::span<const TrialRecord> null_records,
                                      std::span<const TrialRecord> alt_records) {
    OperatingCharacteristics oc;
    auto as_double = [](bool b) { return b ? 1.0 : 0.0; };

    const auto t1 = mean_se(null_records, [&](const TrialRecord& r) { return as_double(r.reject1); });
    const auto t0 = mean_se(null_records, [&](const TrialRecord& r) { return as_double(r.reject0); });
    const auto w1 = mean_se(alt_records, [&](const TrialRecord& r) { return as_double(r.reject1); });
    const auto w0 = mean_se(alt_records, [&](const TrialRecord& r) { return as_double(r.reject0); });
    const auto prop = mean_se(alt_records, [](const TrialRecord& r) { return r.prop_arm1; });
    const auto best = mean_se(alt_records, [](const TrialRecord& r) { return r.best_arm_prop; });
    const auto mse = mean_se(alt_records, [](const TrialRecord& r) { return r.squared_error; });

    oc.type1_z1 = t1.mean, oc.se_type1_z1 = t1.se;
    oc.type1_z0 = t0.mean, oc.se_type1_z0 = t0.se;
    oc.power_z1 = w1.mean, oc.se_power_z1 = w1.se;
    oc.power_z0 = w0.mean, oc.se_power_z0 = w0.se;
    oc.mean_prop_arm1 = prop.mean, oc.se_prop_arm1 = prop.se;
    oc.patient_benefit = best.mean, oc.se_patient_benefit = best.se;
    oc.mse = mse.mean, oc.se_mse = mse.se;
    oc.n_sim = static_cast<int>(alt_records.size());
    return oc;
}

}  // namespace rarburn
