#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rarburn/design.hpp"
#include "rarburn/error.hpp"
#include "rarburn/harness.hpp"
#include "rarburn/inference.hpp"
#include "rarburn/metrics.hpp"
#include "rarburn/rng.hpp"
#include "rarburn/tables.hpp"
#include "rarburn/trial.hpp"

namespace py = pybind11;
using namespace rarburn;

namespace {

ScenarioProfile make_profile(double p0, double p1, int n, double n_half, double alpha,
                             std::uint64_t seed, int threads) {
    ScenarioProfile p;
    p.scenario = {p0, p1, n, n_half, alpha};
    p.seed = seed;
    p.threads = threads;
    p.scenario.validate();
    return p;
}

py::dict oc_dict(const OperatingCharacteristics& oc, int b) {
    py::dict d;
    d["b"] = b;
    d["type1_z1"] = oc.type1_z1;
    d["type1_z0"] = oc.type1_z0;
    d["power_z1"] = oc.power_z1;
    d["power_z0"] = oc.power_z0;
    d["prop_arm1"] = oc.mean_prop_arm1;
    d["patient_benefit"] = oc.patient_benefit;
    d["mse"] = oc.mse;
    d["se_type1_z1"] = oc.se_type1_z1;
    d["se_type1_z0"] = oc.se_type1_z0;
    d["se_power_z1"] = oc.se_power_z1;
    d["se_power_z0"] = oc.se_power_z0;
    d["se_mse"] = oc.se_mse;
    d["n_sim"] = oc.n_sim;
    return d;
}

py::dict report_dict(const MetricReport& r) {
    py::dict d;
    d["design"] = r.design;
    d["n"] = r.n;
    d["r"] = r.r;
    d["r_tilde_rho"] = r.r_tilde_rho;
    d["r_tilde_0"] = r.r_tilde_0;
    d["r_tilde_1"] = r.r_tilde_1;
    d["eps"] = r.eps;
    d["risk"] = r.risk;
    d["delta"] = r.delta;
    d["budget"] = r.budget;
    d["b"] = r.b;
    d["bp"] = r.bp;
    d["b_plugin"] = r.b_plugin;
    d["b_per_replication"] = r.b_per_replication;
    d["ci_r"] = r.ci.r;
    d["ci_eps"] = r.ci.eps;
    d["ci_b"] = r.ci.b;
    d["n_sim"] = r.n_sim;
    d["warnings"] = r.warnings;
    return d;
}

}  // namespace

PYBIND11_MODULE(_rarburn, m) {
    m.doc() = "Burn-in selection and simulation for response-adaptive two-arm trials";
    m.attr("__version__") = RARBURN_VERSION;

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    m.def("design_ids", [] {
        std::vector<std::string> ids;
        for (const auto& d : standard_designs()) ids.push_back(design_id(d));
        return ids;
    });

    m.def(
        "standardized_effect",
        [](double p0, double p1, const std::string& variant) {
            return standardized_effect(p0, p1, parse_delta_variant(variant));
        },
        py::arg("p0"), py::arg("p1"), py::arg("variant") = "rss");

    m.def("burnin_budget", &burnin_budget, py::arg("n"), py::arg("n_half"));

    m.def(
        "recommend_burnin",
        [](int n, double n_half, double risk, double delta) {
            const auto rec = recommend_burnin(n, n_half, risk, delta);
            py::dict d;
            d["b"] = rec.b;
            d["raw"] = rec.raw;
            d["risk"] = rec.risk;
            d["warnings"] = rec.warnings;
            return d;
        },
        py::arg("n"), py::arg("n_half"), py::arg("risk"), py::arg("delta"));

    m.def("wald_z", &wald_z, py::arg("s0"), py::arg("n0"), py::arg("s1"), py::arg("n1"));
    m.def("score_z", &score_z, py::arg("s0"), py::arg("n0"), py::arg("s1"), py::arg("n1"));
    m.def(
        "thompson_prob",
        [](int s0, int n0, int s1, int n1) { return thompson_prob(s0, n0, s1, n1); },
        py::arg("s0"), py::arg("n0"), py::arg("s1"), py::arg("n1"));
    m.def(
        "final_allocation_error",
        [](double prop, double rho) { return final_allocation_error(prop, rho); },
        py::arg("prop_arm1"), py::arg("rho"));

    m.def(
        "simulate_trial",
        [](double p0, double p1, int n, const std::string& design, int b, std::uint64_t seed,
           std::uint64_t replication) {
            const TrialScenario s{p0, p1, n};
            RngStream rng(seed, replication);
            const auto path = simulate_trial(s, make_design(design), b, rng);
            py::dict d;
            d["assignments"] = std::vector<int>(path.assignments().begin(), path.assignments().end());
            d["outcomes"] = std::vector<int>(path.outcomes().begin(), path.outcomes().end());
            d["n1"] = path.count(1);
            d["successes"] = std::vector<int>{path.successes(0), path.successes(1)};
            return d;
        },
        py::arg("p0"), py::arg("p1"), py::arg("n"), py::arg("design"), py::arg("b") = 2,
        py::arg("seed") = 20251016, py::arg("replication") = 0);

    m.def(
        "run_oc",
        [](double p0, double p1, int n, const std::string& design, const std::string& burnin, int n_sim,
           double n_half, double alpha, const std::string& null_point, std::uint64_t seed, int threads) {
            auto profile = make_profile(p0, p1, n, n_half, alpha, seed, threads);
            profile.n_sim_oc = n_sim;
            profile.null_point = parse_null_point(null_point);
            const auto d = make_design(design);
            int b = 2;
            OperatingCharacteristics oc;
            {
                py::gil_scoped_release release;
                b = resolve_burnin(profile, d, parse_burnin_option(burnin));
                oc = run_oc(profile, d, b);
            }
            return oc_dict(oc, d.adaptive() ? b : 2);
        },
        py::arg("p0"), py::arg("p1"), py::arg("n"), py::arg("design"), py::arg("burnin") = "min",
        py::arg("n_sim") = 10000, py::arg("n_half") = 1000.0, py::arg("alpha") = 0.05,
        py::arg("null_point") = "control", py::arg("seed") = 20251016, py::arg("threads") = 0);

    m.def(
        "metrics",
        [](double p0, double p1, int n, const std::string& design, int n_sim, double n_half,
           const std::string& variant, const std::string& mode, std::uint64_t seed, int threads) {
            auto profile = make_profile(p0, p1, n, n_half, 0.05, seed, threads);
            profile.n_sim_metrics = n_sim;
            profile.delta_variant = parse_delta_variant(variant);
            profile.mode = parse_burnin_mode(mode);
            const auto d = make_design(design);
            MetricReport report;
            {
                py::gil_scoped_release release;
                report = run_metrics(profile, d);
            }
            return report_dict(report);
        },
        py::arg("p0"), py::arg("p1"), py::arg("n"), py::arg("design"), py::arg("n_sim") = 1000,
        py::arg("n_half") = 1000.0, py::arg("variant") = "rss", py::arg("mode") = "plugin",
        py::arg("seed") = 20251016, py::arg("threads") = 0);

    m.def(
        "reproduce_table",
        [](const std::string& id, std::optional<int> n_sim, std::optional<std::uint64_t> seed, int threads,
           std::vector<std::string> designs, bool as_json) {
            TableOverrides o;
            o.n_sim = n_sim;
            o.seed = seed;
            o.threads = threads;
            o.designs = std::move(designs);
            const auto table_id = parse_table_id(id);
            TableArtifact t;
            {
                py::gil_scoped_release release;
                t = reproduce_table(table_id, o);
            }
            return as_json ? t.json() : t.csv();
        },
        py::arg("id"), py::arg("n_sim") = py::none(), py::arg("seed") = py::none(), py::arg("threads") = 0,
        py::arg("designs") = std::vector<std::string>{}, py::arg("json") = false);
}
