#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rarburn/error.hpp"
#include "rarburn/harness.hpp"
#include "rarburn/metrics.hpp"
#include "rarburn/profile.hpp"
#include "rarburn/tables.hpp"

namespace rarburn::cli {

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr std::uint64_t kDefaultSeed = 20251016;

struct Common {
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
    std::string variant = "rss";
    std::string mode = "plugin";
    double n_half = 1000.0;
    std::optional<int> nsim;
};

struct Rates {
    std::optional<double> p0, p1;
    std::optional<int> n;
    double alpha = 0.05;
};

void add_common(CLI::App* cmd, Common& c, bool with_mode = true) {
    cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
    cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--delta-variant", c.variant, "rss or ssd")
        ->check(CLI::IsMember({"rss", "ssd"}))
        ->capture_default_str();
    if (with_mode)
        cmd->add_option("--mode", c.mode, "burn-in aggregation: plugin or perrep")
            ->check(CLI::IsMember({"plugin", "perrep"}))
            ->capture_default_str();
    cmd->add_option("--n-half", c.n_half, "saturation parameter of the budget")
        ->check(CLI::Range(1.0, 1e12))
        ->capture_default_str();
    cmd->add_option("--nsim", c.nsim, "Monte Carlo replications")->check(CLI::PositiveNumber);
}

void add_rates(CLI::App* cmd, Rates& r, bool required) {
    auto* p0 = cmd->add_option("--p0", r.p0, "control response rate")->check(CLI::Range(0.0, 1.0));
    auto* p1 = cmd->add_option("--p1", r.p1, "treatment response rate")->check(CLI::Range(0.0, 1.0));
    auto* n = cmd->add_option("--n", r.n, "total trial size")->check(CLI::Range(4, 1000000));
    if (required) {
        p0->required();
        p1->required();
        n->required();
    }
    cmd->add_option("--alpha", r.alpha, "two-sided significance level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
}

void provenance(std::ostream& out, std::uint64_t seed, std::string_view variant, double n_half,
                std::string_view mode, std::optional<int> nsim = std::nullopt) {
    out << fmt::format("rarburn {} | seed {} | delta {} | n_half {} | mode {}", RARBURN_VERSION,
                       seed, variant, format_number(n_half), mode);
    if (nsim) out << " | nsim " << *nsim;
    out << '\n';
}

void reduced_precision(std::ostream& out, int used, int full) {
    if (used < full)
        out << fmt::format("note: reduced precision ({} replications, default {})\n", used, full);
}

std::vector<std::string> split_commas(const std::string& list) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = list.find(',', start);
        out.push_back(list.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) return out;
        start = comma + 1;
    }
}

std::vector<DesignSpec> designs_from(const std::string& list) {
    if (list.empty() || list == "all") return standard_designs();
    std::vector<DesignSpec> out;
    for (const auto& id : split_commas(list)) out.push_back(make_design(id));
    return out;
}

std::string pm(double value, double radius, int digits = 2) {
    return fmt::format("{:.{}f} +/- {:.{}f}", value, digits, radius, digits);
}

// b is an integer; ER reports the floor since nothing adapts.
std::string b_cell(const MetricReport& m) {
    if (!m.adaptive) return "2 (no adaptation)";
    return fmt::format("{} +/- {:.1f}", m.b, m.ci.b);
}

void print_warnings(std::ostream& out, const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) out << "warning: " << w << '\n';
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

ScenarioProfile profile_from(const Rates& rates, const Common& c, const std::string& designs) {
    ScenarioProfile p;
    p.name = "command line";
    p.scenario = {*rates.p0, *rates.p1, *rates.n, c.n_half, rates.alpha};
    p.designs = designs_from(designs);
    p.seed = c.seed;
    p.threads = c.threads;
    p.delta_variant = parse_delta_variant(c.variant);
    p.mode = parse_burnin_mode(c.mode);
    if (c.nsim) p.n_sim_metrics = p.n_sim_oc = *c.nsim;
    p.validate();
    return p;
}

// ---------------------------------------------------------------------------

int cmd_delta(std::ostream& out, const Rates& r, const std::string& variant) {
    provenance(out, kDefaultSeed, variant.empty() ? "rss+ssd" : variant, 1000.0, "-");
    for (const char* v : {"rss", "ssd"}) {
        if (!variant.empty() && variant != v) continue;
        const double d = standardized_effect(*r.p0, *r.p1, parse_delta_variant(v));
        out << fmt::format("{} {}\n", v, std::isinf(d) ? std::string("inf") : fmt::format("{:.4f}", d));
    }
    return 0;
}

int cmd_recommend(std::ostream& out, const Rates& r, const Common& c, const std::string& designs,
                  std::optional<double> rho, const std::string& csv_path, bool detailed) {
    const ScenarioProfile p = profile_from(r, c, designs);
    MetricOptions opts = p.metric_options();
    opts.rho_override = rho;

    provenance(out, p.seed, c.variant, c.n_half, c.mode, opts.n_sim);
    reduced_precision(out, opts.n_sim, 1000);
    const double delta = standardized_effect(p.scenario.p0, p.scenario.p1, p.delta_variant);
    out << fmt::format("p0 {}  p1 {}  n {}  budget {:.2f}  delta {:.4f}\n", format_number(p.scenario.p0),
                       format_number(p.scenario.p1), p.scenario.n,
                       burnin_budget(p.scenario.n, p.scenario.n_half), delta);
    out << "values x100 except b; +/- are 95% Monte Carlo radii\n";
    out << fmt::format("{:<9} {:<16} {:<16} {:<16} {:<15} {}\n", "design", "r", "eps", "r+eps", "b", "BP");

    std::vector<MetricReport> reports;
    std::vector<std::string> warnings;
    for (const auto& d : p.designs) {
        MetricOptions o = opts;
        o.seed = derive_seed(p.seed, "metrics|" + d.label);
        MetricReport m = reactiveness_scenario(d, p.scenario, o);
        out << fmt::format("{:<9} {:<16} {:<16} {:<16} {:<15} {}\n", m.design, pm(100 * m.r, 100 * m.ci.r),
                           pm(100 * m.eps, 100 * m.ci.eps), pm(100 * m.risk, 100 * m.ci.risk),
                           b_cell(m),
                           m.adaptive ? pm(100 * m.bp, 100 * m.ci.bp) : std::string("-"));
        if (detailed)
            out << fmt::format("          r~(rho) {:.2f}  r~(0) {:.2f}  r~(1) {:.2f}  b plugin {}  b perrep {:.2f}\n",
                               100 * m.r_tilde_rho, 100 * m.r_tilde_0, 100 * m.r_tilde_1, m.b_plugin,
                               m.b_per_replication);
        for (const auto& w : m.warnings)
            if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
        reports.push_back(std::move(m));
    }
    print_warnings(out, warnings);
    if (!csv_path.empty()) write_file(csv_path, metric_reports_csv(reports, p.scenario.p0, p.scenario.p1));
    return 0;
}

int cmd_metrics_global(std::ostream& out, int n, const Common& c, const std::string& designs) {
    MetricOptions o;
    o.seed = c.seed;
    o.threads = c.threads;
    o.variant = parse_delta_variant(c.variant);
    if (c.nsim) o.n_sim = *c.nsim;
    provenance(out, o.seed, c.variant, c.n_half, "perrep", o.n_sim);
    reduced_precision(out, o.n_sim, 1000);
    out << fmt::format("uniform rates, n {}; values x100 except b\n", n);
    out << fmt::format("{:<9} {:<16} {:<16} {:<16} {}\n", "design", "r", "eps", "r+eps", "b");
    for (const auto& d : designs_from(designs)) {
        const MetricReport m = run_metrics_global(d, n, c.n_half, o);
        out << fmt::format("{:<9} {:<16} {:<16} {:<16} {}\n", m.design, pm(100 * m.r, 100 * m.ci.r),
                           pm(100 * m.eps, 100 * m.ci.eps), pm(100 * m.risk, 100 * m.ci.risk),
                           b_cell(m));
    }
    return 0;
}

int cmd_metrics_profile(std::ostream& out, ScenarioProfile p) {
    provenance(out, p.seed, to_string(p.delta_variant), p.scenario.n_half, to_string(p.mode), p.n_sim_metrics);
    reduced_precision(out, p.n_sim_metrics, 1000);
    out << fmt::format("{}: p0 {} p1 {} n {}; values x100 except b\n", p.name, format_number(p.scenario.p0),
                       format_number(p.scenario.p1), p.scenario.n);
    for (const auto& d : p.designs) {
        const MetricReport m = run_metrics(p, d);
        out << fmt::format("{:<9} r {:<16} eps {:<16} b {}\n", m.design, pm(100 * m.r, 100 * m.ci.r),
                           pm(100 * m.eps, 100 * m.ci.eps), b_cell(m));
        print_warnings(out, m.warnings);
    }
    return 0;
}

int cmd_simulate(std::ostream& out, ScenarioProfile p) {
    provenance(out, p.seed, to_string(p.delta_variant), p.scenario.n_half, to_string(p.mode), p.n_sim_oc);
    out << "null point " << to_string(p.null_point) << '\n';
    reduced_precision(out, p.n_sim_oc, 10000);
    out << "rates x100 +/- one standard error\n";
    out << fmt::format("{:<9} {:>4}  {:<15} {:<15} {:<15} {:<15} {:<14} {}\n", "design", "b", "type1 Z1",
                       "type1 Z0", "power Z1", "power Z0", "n1/n", "MSE");
    std::vector<std::string> warnings;
    for (const auto& d : p.designs) {
        std::vector<BurnInOption> options{{BurnInKind::Min}};
        if (d.adaptive()) options = p.burnin_options;
        for (const auto& opt : options) {
            const int b = d.adaptive() ? resolve_burnin(p, d, opt) : 2;
            const auto oc = run_oc(p, d, b);
            out << fmt::format("{:<9} {:>4}  {:<15} {:<15} {:<15} {:<15} {:<14} {:.4f}\n", d.label,
                               d.adaptive() ? std::to_string(b) : std::string("-"),
                               pm(100 * oc.type1_z1, 100 * oc.se_type1_z1),
                               pm(100 * oc.type1_z0, 100 * oc.se_type1_z0),
                               pm(100 * oc.power_z1, 100 * oc.se_power_z1),
                               pm(100 * oc.power_z0, 100 * oc.se_power_z0),
                               pm(oc.mean_prop_arm1, oc.se_prop_arm1, 3), oc.mse);
        }
        for (const auto& w : d.warnings()) warnings.push_back(w);
    }
    print_warnings(out, warnings);
    return 0;
}

int cmd_table(std::ostream& out, const std::string& id, const Common& c, bool variant_set, bool mode_set,
              bool n_half_set, const std::string& formula_b, const std::string& null_point,
              const std::string& designs, const std::string& csv_path, const std::string& json_path) {
    TableOverrides o;
    o.n_sim = c.nsim;
    o.seed = c.seed;
    o.threads = c.threads;
    if (variant_set) o.variant = parse_delta_variant(c.variant);
    if (mode_set) o.mode = parse_burnin_mode(c.mode);
    if (n_half_set) o.n_half = c.n_half;
    if (!null_point.empty()) o.null_point = parse_null_point(null_point);
    o.computed_formula_b = formula_b == "computed";
    if (!designs.empty() && designs != "all")
        for (const auto& d : designs_from(designs)) o.designs.push_back(design_id(d));

    const TableArtifact t = reproduce_table(parse_table_id(id), o);
    std::string line;
    for (const auto& [k, v] : t.provenance) line += (line.empty() ? "" : " | ") + k + " " + v;
    out << line << '\n';
    for (const auto& w : t.warnings) out << (w.rfind("reduced precision", 0) == 0 ? "note: " : "warning: ") << w << '\n';
    out << t.summary;
    if (!csv_path.empty()) write_file(csv_path, t.csv());
    if (!json_path.empty()) write_file(json_path, t.json());
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Burn-in selection for response-adaptive two-arm trials", "rarburn"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(RARBURN_VERSION));

    // delta
    Rates delta_rates;
    std::string delta_variant;
    auto* delta = app.add_subcommand("delta", "standardized treatment effect");
    delta->add_option("--p0", delta_rates.p0)->required()->check(CLI::Range(0.0, 1.0));
    delta->add_option("--p1", delta_rates.p1)->required()->check(CLI::Range(0.0, 1.0));
    delta->add_option("--variant", delta_variant, "rss or ssd (default: both)")
        ->check(CLI::IsMember({"rss", "ssd"}));

    // recommend
    Rates rec_rates;
    Common rec_common;
    std::string rec_designs = "all", rec_out;
    std::optional<double> rec_rho;
    auto* recommend = app.add_subcommand("recommend", "recommended burn-in at given rates");
    add_rates(recommend, rec_rates, true);
    add_common(recommend, rec_common);
    recommend->add_option("--design", rec_designs, "design id(s), comma separated, or all")->capture_default_str();
    recommend->add_option("--rho", rec_rho, "limiting proportion for designs without a known one")
        ->check(CLI::Range(0.0, 1.0));
    recommend->add_option("--out", rec_out, "write the reports as CSV");

    // metrics
    Rates met_rates;
    Common met_common;
    std::string met_designs = "all", met_profile;
    std::optional<double> met_rho;
    auto* metrics = app.add_subcommand(
        "metrics", "reactiveness and allocation error; uniform rates unless --p0/--p1 or --profile");
    add_rates(metrics, met_rates, false);
    add_common(metrics, met_common);
    metrics->add_option("--design", met_designs)->capture_default_str();
    metrics->add_option("--rho", met_rho)->check(CLI::Range(0.0, 1.0));
    metrics->add_option("--profile", met_profile, "scenario profile file")->check(CLI::ExistingFile);

    // simulate
    Rates sim_rates;
    Common sim_common;
    std::string sim_designs = "all", sim_profile, sim_burnin = "min", sim_null = "control";
    auto* simulate = app.add_subcommand("simulate", "operating characteristics by simulation");
    add_rates(simulate, sim_rates, false);
    add_common(simulate, sim_common);
    simulate->add_option("--design", sim_designs)->capture_default_str();
    simulate->add_option("--burnin", sim_burnin, "comma list of min, third, half, formula or integers")
        ->capture_default_str();
    simulate->add_option("--null-point", sim_null)->check(CLI::IsMember({"control", "midpoint"}))->capture_default_str();
    simulate->add_option("--profile", sim_profile, "scenario profile file")->check(CLI::ExistingFile);

    // table
    std::string table_id, table_out, table_json, table_formula = "published", table_null, table_designs;
    Common table_common;
    auto* table = app.add_subcommand("table", "reproduce a published table or figure data set");
    table->add_option("--id", table_id, "t1|t2|t2-arrest|t2-calisto|t3|t4|fig1|fig2")->required();
    add_common(table, table_common);
    table->add_option("--out", table_out, "CSV output path");
    table->add_option("--json", table_json, "JSON output path");
    table->add_option("--formula-b", table_formula, "published or computed")
        ->check(CLI::IsMember({"published", "computed"}))
        ->capture_default_str();
    table->add_option("--null-point", table_null)->check(CLI::IsMember({"control", "midpoint"}));
    table->add_option("--design", table_designs, "restrict to these design ids");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (delta->parsed()) return cmd_delta(out, delta_rates, delta_variant);
        if (recommend->parsed())
            return cmd_recommend(out, rec_rates, rec_common, rec_designs, rec_rho, rec_out, false);
        if (metrics->parsed()) {
            if (!met_profile.empty()) {
                ScenarioProfile p = load_profile(met_profile);
                if (met_common.nsim) p.n_sim_metrics = *met_common.nsim;
                if (met_common.threads) p.threads = met_common.threads;
                return cmd_metrics_profile(out, p);
            }
            if (met_rates.p0 || met_rates.p1) {
                if (!met_rates.p0 || !met_rates.p1 || !met_rates.n)
                    throw Error(ErrorCode::Configuration, "--p0, --p1 and --n go together");
                return cmd_recommend(out, met_rates, met_common, met_designs, met_rho, "", true);
            }
            if (!met_rates.n) throw Error(ErrorCode::Configuration, "metrics needs --n, --p0/--p1 or --profile");
            return cmd_metrics_global(out, *met_rates.n, met_common, met_designs);
        }
        if (simulate->parsed()) {
            ScenarioProfile p;
            if (!sim_profile.empty()) {
                p = load_profile(sim_profile);
                if (sim_common.nsim) p.n_sim_oc = *sim_common.nsim;
                if (sim_common.threads) p.threads = sim_common.threads;
            } else {
                if (!sim_rates.p0 || !sim_rates.p1 || !sim_rates.n)
                    throw Error(ErrorCode::Configuration, "simulate needs --p0, --p1 and --n (or --profile)");
                p = profile_from(sim_rates, sim_common, sim_designs);
                p.null_point = parse_null_point(sim_null);
                p.burnin_options.clear();
                for (const auto& part : split_commas(sim_burnin)) p.burnin_options.push_back(parse_burnin_option(part));
                p.validate();
            }
            return cmd_simulate(out, p);
        }
        if (table->parsed())
            return cmd_table(out, table_id, table_common, table->count("--delta-variant") > 0,
                             table->count("--mode") > 0, table->count("--n-half") > 0, table_formula,
                             table_null, table_designs, table_out, table_json);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace rarburn::cli
