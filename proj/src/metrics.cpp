#include "rarburn/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "rarburn/error.hpp"
#include "rarburn/parallel.hpp"
#include "rarburn/trial.hpp"

namespace rarburn {

namespace {

constexpr double kZ95 = 1.959963984540054;

struct Moments {
    double mean = 0;
    double radius = 0;  // 95% normal-approximation CI radius of the mean
};

template <class Range, class Get>
Moments moments(const Range& reps, Get get) {
    if (reps.empty()) return {};
    const double n = static_cast<double>(reps.size());
    double sum = 0;
    for (const auto& r : reps) sum += get(r);
    const double mean = sum / n;
    double ss = 0;
    for (const auto& r : reps) ss += (get(r) - mean) * (get(r) - mean);
    const double var = reps.size() > 1 ? ss / (n - 1) : 0.0;
    return {mean, kZ95 * std::sqrt(var / n)};
}

double slope_at(const ReplicationMetrics& r, int ref) {
    switch (ref) {
        case 0: return r.slope_rho;
        case 1: return r.slope_zero;
        case 2: return r.slope_one;
        default: return 0.0;
    }
}

}  // namespace

std::string_view to_string(DeltaVariant v) { return v == DeltaVariant::RSS ? "rss" : "ssd"; }

std::string_view to_string(BurnInMode m) {
    return m == BurnInMode::PlugIn ? "plugin" : "perrep";
}

DeltaVariant parse_delta_variant(std::string_view s) {
    if (s == "rss") return DeltaVariant::RSS;
    if (s == "ssd") return DeltaVariant::SSD;
    throw Error(ErrorCode::Configuration, "unknown delta variant '" + std::string(s) + "' (rss|ssd)");
}

BurnInMode parse_burnin_mode(std::string_view s) {
    if (s == "plugin") return BurnInMode::PlugIn;
    if (s == "perrep") return BurnInMode::PerReplication;
    throw Error(ErrorCode::Configuration, "unknown mode '" + std::string(s) + "' (plugin|perrep)");
}

double standardized_effect(double p0, double p1, DeltaVariant variant) {
    if (!(p0 >= 0 && p0 <= 1 && p1 >= 0 && p1 <= 1))
        throw Error(ErrorCode::InvalidScenario, "response rates must lie in [0, 1]");
    const double v0 = p0 * (1.0 - p0);
    const double v1 = p1 * (1.0 - p1);
    const double scale =
        variant == DeltaVariant::RSS ? std::sqrt(v0 + v1) : std::sqrt(v0) + std::sqrt(v1);
    const double diff = std::abs(p1 - p0);
    if (scale == 0.0) {
        if (diff == 0.0)
            throw Error(ErrorCode::UndefinedEffect,
                        "standardized effect is undefined (0/0) when both arms are deterministic "
                        "and equal");
        return std::numeric_limits<double>::infinity();
    }
    return diff / scale;
}

double burnin_budget(double n, double n_half) { return n * n_half / (n + n_half); }

double geometric_slope(const TrialPath& path, double rho) {
    const int n = path.size();
    if (rho == 0.5 || n < 2) return 0.0;
    const double floor_dev = 1.0 / (2.0 * n);
    const double base = std::abs(0.5 - rho);
    const auto& running = path.running_n1();
    double sum = 0.0;
    for (int i = 2; i <= n; ++i) {
        const double prop = static_cast<double>(running[i - 1]) / i;
        const double dev = std::max(std::abs(prop - rho), floor_dev);
        sum += -std::log(dev / base) / std::log(static_cast<double>(i));
    }
    return sum / n;
}

double final_allocation_error(double prop_arm1, double rho) {
    if (rho >= 0.5) {
        if (prop_arm1 > rho) return prop_arm1 - rho;
        if (prop_arm1 < 0.5) return 0.5 - prop_arm1;
        return 0.0;
    }
    // Mirror image on arm 0: its share should lie in [1/2, 1 - rho].
    const double prop_arm0 = 1.0 - prop_arm1;
    if (prop_arm0 > 1.0 - rho) return prop_arm0 - (1.0 - rho);
    if (prop_arm0 < 0.5) return 0.5 - prop_arm0;
    return 0.0;
}

double final_allocation_error(const TrialPath& path, double rho) {
    return final_allocation_error(path.proportion_arm1(), rho);
}

BurnInRecommendation recommend_burnin(int n, double n_half, double risk, double delta) {
    if (std::isnan(risk) || std::isnan(delta) || delta < 0.0)
        throw Error(ErrorCode::Configuration, "burn-in formula needs risk and delta >= 0");
    BurnInRecommendation out;
    if (risk > 1.0) {
        out.warnings.push_back("r + eps = " + std::to_string(risk) + " exceeds 1; clamped to 1");
        risk = 1.0;
    } else if (risk < 0.0) {
        out.warnings.push_back("r + eps = " + std::to_string(risk) + " is negative; clamped to 0");
        risk = 0.0;
    }
    out.risk = risk;

    double factor;
    if (std::isinf(delta))
        factor = risk >= 1.0 ? 1.0 : 0.0;
    else
        factor = std::pow(risk, delta);  // pow(0, 0) == 1
    out.raw = 0.5 * burnin_budget(n, n_half) * factor;

    out.b = std::max(2, static_cast<int>(std::floor(out.raw)));
    const int cap = n / 2;
    if (out.b > cap) {
        out.warnings.push_back("formula burn-in " + std::to_string(out.b) +
                               " exceeds n/2; capped at " + std::to_string(cap));
        out.b = cap;
    }
    return out;
}

ReplicationMetrics replication_metrics(const TrialPath& path, double rho, double delta) {
    ReplicationMetrics m;
    m.rho = rho;
    m.delta = delta;
    m.eps = final_allocation_error(path, rho);
    if (rho != 0.5) {
        m.slope_rho = geometric_slope(path, rho);
        m.slope_zero = geometric_slope(path, 0.0);
        m.slope_one = geometric_slope(path, 1.0);
    }
    return m;
}

MetricReport summarize_metrics(std::span<const ReplicationMetrics> reps, const DesignSpec& design,
                               int n, double n_half, double delta, bool global,
                               const MetricOptions& options) {
    MetricReport rep;
    rep.design = design.label;
    rep.n = n;
    rep.n_half = n_half;
    rep.global = global;
    rep.adaptive = design.adaptive();
    rep.n_sim = static_cast<int>(reps.size());
    rep.variant = options.variant;
    rep.mode = global ? BurnInMode::PerReplication : options.mode;
    rep.budget = burnin_budget(n, n_half);
    rep.warnings = design.warnings();

    const Moments m_rho = moments(reps, [](const auto& r) { return r.slope_rho; });
    const Moments m_zero = moments(reps, [](const auto& r) { return r.slope_zero; });
    const Moments m_one = moments(reps, [](const auto& r) { return r.slope_one; });
    const Moments m_eps = moments(reps, [](const auto& r) { return r.eps; });
    rep.r_tilde_rho = m_rho.mean, rep.ci.r_tilde_rho = m_rho.radius;
    rep.r_tilde_0 = m_zero.mean, rep.ci.r_tilde_0 = m_zero.radius;
    rep.r_tilde_1 = m_one.mean, rep.ci.r_tilde_1 = m_one.radius;
    rep.eps = m_eps.mean, rep.ci.eps = m_eps.radius;

    // r = max(0, r~(rho), r~(0), r~(1)); remember which reference attains it.
    int ref = -1;
    rep.r = 0.0;
    const std::array<Moments, 3> slopes{m_rho, m_zero, m_one};
    for (int k = 0; k < 3; ++k) {
        if (slopes[k].mean > rep.r) {
            rep.r = slopes[k].mean;
            rep.ci.r = slopes[k].radius;
            ref = k;
        }
    }
    rep.risk = rep.r + rep.eps;
    const Moments m_risk = moments(reps, [&](const auto& r) { return slope_at(r, ref) + r.eps; });
    rep.ci.risk = m_risk.radius;

    if (global) {
        rep.delta = moments(reps, [](const auto& r) { return r.delta; }).mean;
    } else {
        rep.delta = delta;
    }
    if (rep.adaptive && !global) {
        const auto plug = recommend_burnin(n, n_half, rep.risk, delta);
        rep.b_plugin = plug.b;
        for (const auto& w : plug.warnings) rep.warnings.push_back(w);
    }

    // Per replication: b_m from that replication's own risk (and delta in
    // global mode).
    std::vector<double> b_values;
    b_values.reserve(reps.size());
    for (const auto& r : reps) {
        if (!rep.adaptive) break;
        const double risk_m = std::clamp(slope_at(r, ref) + r.eps, 0.0, 1.0);
        b_values.push_back(recommend_burnin(n, n_half, risk_m, global ? r.delta : delta).b);
    }
    const Moments m_b = moments(b_values, [](double b) { return b; });
    rep.b_per_replication = m_b.mean;

    if (!rep.adaptive) {
        // Nothing adapts, so the burn-in is moot; report the floor.
        rep.b = rep.b_plugin = 2;
        rep.b_per_replication = 2.0;
        rep.bp = 4.0 / n;
        rep.ci.b = rep.ci.bp = 0.0;
    } else if (rep.mode == BurnInMode::PerReplication) {
        rep.b = static_cast<int>(std::lround(m_b.mean));
        rep.ci.b = m_b.radius;
        rep.bp = 2.0 * m_b.mean / n;
        rep.ci.bp = 2.0 * m_b.radius / n;
    } else {
        rep.b = rep.b_plugin;
        rep.bp = 2.0 * rep.b / n;
        const double hi = recommend_burnin(n, n_half, std::min(1.0, rep.risk + rep.ci.risk), delta).raw;
        const double lo = recommend_burnin(n, n_half, std::max(0.0, rep.risk - rep.ci.risk), delta).raw;
        rep.ci.b = 0.5 * (hi - lo);
        rep.ci.bp = 2.0 * rep.ci.b / n;
    }
    return rep;
}

MetricReport reactiveness_scenario(const DesignSpec& design, const TrialScenario& scenario,
                                   const MetricOptions& options) {
    check_trial_setup(scenario, design, 2);
    if (options.n_sim < 1) throw Error(ErrorCode::Configuration, "n_sim must be positive");
    const double delta = standardized_effect(scenario.p0, scenario.p1, options.variant);
    const std::optional<double> limit =
        options.rho_override ? options.rho_override : limiting_proportion(design, scenario.p0, scenario.p1);
    if (!limit)
        throw Error(ErrorCode::UnsupportedLimit,
                    design.label + " has no known limiting proportion at these rates; supply one");
    const double rho = *limit;

    const auto reps = parallel_replications(options.n_sim, options.threads, [&](int m) {
        RngStream rng(options.seed, static_cast<std::uint64_t>(m));
        const TrialPath path = simulate_trial(scenario, design, 2, rng);
        return replication_metrics(path, rho, delta);
    });
    return summarize_metrics(reps, design, scenario.n, scenario.n_half, delta, false, options);
}

MetricReport reactiveness_global(const DesignSpec& design, int n, double n_half,
                                 const MetricOptions& options) {
    TrialScenario probe{0.5, 0.5, n, n_half, 0.05};
    check_trial_setup(probe, design, 2);
    if (options.n_sim < 1) throw Error(ErrorCode::Configuration, "n_sim must be positive");

    const auto reps = parallel_replications(options.n_sim, options.threads, [&](int m) {
        RngStream rng(options.seed, static_cast<std::uint64_t>(m));
        TrialScenario sc = probe;
        sc.p0 = rng.uniform();
        sc.p1 = rng.uniform();
        std::optional<double> limit =
            options.rho_override ? options.rho_override : limiting_proportion(design, sc.p0, sc.p1);
        // Only reachable on the measure-zero diagonal p0 == p1.
        const double rho = limit.value_or(0.5);
        double delta = 0.0;
        if (!(sc.p0 == sc.p1 && (sc.p0 == 0.0 || sc.p0 == 1.0)))
            delta = standardized_effect(sc.p0, sc.p1, options.variant);
        const TrialPath path = simulate_trial(sc, design, 2, rng);
        return replication_metrics(path, rho, delta);
    });
    return summarize_metrics(reps, design, n, n_half, 0.0, true, options);
}

}  // namespace rarburn
