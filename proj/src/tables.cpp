#include "rarburn/tables.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "rarburn/error.hpp"
#include "rarburn/reference.hpp"

namespace rarburn {

namespace {

constexpr int kDefaultMetricSims = 1000;
constexpr int kDefaultOcSims = 10000;

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

Cell num(double x) { return std::isnan(x) ? Cell{} : Cell{x}; }

std::vector<DesignSpec> select_designs(const std::vector<std::string>& ids) {
    if (ids.empty()) return standard_designs();
    std::vector<DesignSpec> out;
    for (const auto& id : ids) out.push_back(make_design(id));
    return out;
}

void apply_overrides(ScenarioProfile& p, const TableOverrides& o) {
    if (o.seed) p.seed = *o.seed;
    p.threads = o.threads;
    if (o.variant) p.delta_variant = *o.variant;
    if (o.mode) p.mode = *o.mode;
    if (o.n_half) p.scenario.n_half = *o.n_half;
    if (o.null_point) p.null_point = *o.null_point;
    if (!o.designs.empty()) p.designs = select_designs(o.designs);
}

// "12.34 (12.50)": ours, then the reference value, in the x100 convention.
std::string pct_vs(double ours, double ref) {
    if (std::isnan(ours)) return "-";
    if (std::isnan(ref)) return fmt::format("{:.2f}", 100.0 * ours);
    return fmt::format("{:.2f} ({:.2f})", 100.0 * ours, ref);
}

std::string raw_vs(double ours, double ref, int digits) {
    if (std::isnan(ours)) return "-";
    if (std::isnan(ref)) return fmt::format("{:.{}f}", ours, digits);
    return fmt::format("{:.{}f} ({:.{}f})", ours, digits, ref, digits);
}

void add_reduced_precision(TableArtifact& t, int used, int full) {
    if (used < full)
        t.warnings.push_back(fmt::format("reduced precision: {} replications (default {})", used, full));
}

void add_common_provenance(TableArtifact& t, std::uint64_t seed, DeltaVariant v, double n_half,
                           std::string_view mode) {
    t.provenance = {{"version", RARBURN_VERSION},
                    {"table", std::string(to_string(t.id))},
                    {"seed", std::to_string(seed)},
                    {"delta_variant", std::string(to_string(v))},
                    {"n_half", format_number(n_half)},
                    {"mode", std::string(mode)}};
}

void append_design_warnings(TableArtifact& t, const std::vector<DesignSpec>& designs) {
    for (const auto& d : designs)
        for (const auto& w : d.warnings())
            if (std::find(t.warnings.begin(), t.warnings.end(), w) == t.warnings.end())
                t.warnings.push_back(w);
}

const std::vector<std::string> kMetricColumns{"design", "r_x100", "r_ci", "eps_x100", "eps_ci",
                                              "sum_x100", "sum_ci", "b", "b_ci", "BP_x100", "BP_ci"};

void push_metric_cells(std::vector<Cell>& row, const MetricReport& m) {
    row.emplace_back(m.design);
    row.push_back(num(100 * m.r));
    row.push_back(num(100 * m.ci.r));
    row.push_back(num(100 * m.eps));
    row.push_back(num(100 * m.ci.eps));
    row.push_back(num(100 * m.risk));
    row.push_back(num(100 * m.ci.risk));
    if (m.adaptive) {
        row.emplace_back(static_cast<long long>(m.b));
        row.push_back(num(m.ci.b));
        row.push_back(num(100 * m.bp));
        row.push_back(num(100 * m.ci.bp));
    } else {
        row.insert(row.end(), 4, Cell{});
    }
}

std::string metric_summary_line(std::string_view key, const MetricReport& m, const MetricRef* ref) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto pick = [&](double MetricRef::*f) { return ref ? ref->*f : nan; };
    return fmt::format("{:<8} {:<9} r {:<16} eps {:<16} b {:<14} BP {}\n", key, m.design,
                       pct_vs(m.r, pick(&MetricRef::r)), pct_vs(m.eps, pick(&MetricRef::eps)),
                       m.adaptive ? raw_vs(m.b, pick(&MetricRef::b), 0) : std::string("-"),
                       m.adaptive ? pct_vs(m.bp, pick(&MetricRef::bp)) : std::string("-"));
}

TableArtifact table_sweep(const TableOverrides& o) {
    TableArtifact t;
    t.id = TableId::T1;
    t.columns = kMetricColumns;
    t.columns.insert(t.columns.begin(), "n");

    MetricOptions opts;
    opts.n_sim = o.n_sim.value_or(kDefaultMetricSims);
    if (o.seed) opts.seed = *o.seed;
    opts.threads = o.threads;
    opts.variant = o.variant.value_or(DeltaVariant::RSS);
    const double n_half = o.n_half.value_or(1000.0);
    const auto designs = select_designs(o.designs);

    add_common_provenance(t, opts.seed, opts.variant, n_half, "perrep");
    t.provenance.emplace_back("n_sim", std::to_string(opts.n_sim));
    add_reduced_precision(t, opts.n_sim, kDefaultMetricSims);
    append_design_warnings(t, designs);

    t.summary = "values x100 as ours (published)\n";
    for (int n : o.sweep_n) {
        for (const auto& d : designs) {
            const MetricReport m = run_metrics_global(d, n, n_half, opts);
            std::vector<Cell> row{static_cast<long long>(n)};
            push_metric_cells(row, m);
            t.rows.push_back(std::move(row));
            t.summary += metric_summary_line(std::to_string(n), m, find_reference_metric("", n, d.label));
        }
    }
    return t;
}

TableArtifact table_case_metrics(TableId id, const TableOverrides& o) {
    TableArtifact t;
    t.id = id;
    t.columns = kMetricColumns;
    t.columns.insert(t.columns.begin(), {"scenario", "n"});

    std::vector<std::string> names;
    if (id != TableId::T2Calisto) names.push_back("ARREST");
    if (id != TableId::T2Arrest) names.push_back("CALISTO");

    t.summary = "values x100 as ours (published)\n";
    for (std::size_t k = 0; k < names.size(); ++k) {
        ScenarioProfile p = case_study_profile(names[k]);
        apply_overrides(p, o);
        if (o.n_sim) p.n_sim_metrics = *o.n_sim;
        if (k == 0) {
            add_common_provenance(t, p.seed, p.delta_variant, p.scenario.n_half, to_string(p.mode));
            t.provenance.emplace_back("n_sim", std::to_string(p.n_sim_metrics));
            add_reduced_precision(t, p.n_sim_metrics, kDefaultMetricSims);
            append_design_warnings(t, p.designs);
        }
        for (const auto& d : p.designs) {
            const MetricReport m = run_metrics(p, d);
            std::vector<Cell> row{names[k], static_cast<long long>(p.scenario.n)};
            push_metric_cells(row, m);
            t.rows.push_back(std::move(row));
            for (const auto& w : m.warnings)
                if (std::find(t.warnings.begin(), t.warnings.end(), w) == t.warnings.end())
                    t.warnings.push_back(w);
            t.summary += metric_summary_line(names[k], m,
                                             find_reference_metric(names[k], p.scenario.n, d.label));
        }
    }
    return t;
}

TableArtifact table_oc(TableId id, const TableOverrides& o) {
    const std::string name = id == TableId::T3 ? "ARREST" : "CALISTO";
    ScenarioProfile p = case_study_profile(name);
    apply_overrides(p, o);
    if (o.n_sim) p.n_sim_oc = *o.n_sim;
    if (o.computed_formula_b) p.formula_b.clear();

    TableArtifact t;
    t.id = id;
    t.columns = {"design", "burnin", "type1_z1", "type1_z0", "power_z1",
                 "power_z0", "prop_arm1", "mse"};
    add_common_provenance(t, p.seed, p.delta_variant, p.scenario.n_half, to_string(p.mode));
    t.provenance.emplace_back("n_sim", std::to_string(p.n_sim_oc));
    t.provenance.emplace_back("null_point", std::string(to_string(p.null_point)));
    t.provenance.emplace_back("formula_b", o.computed_formula_b ? "computed" : "published");
    add_reduced_precision(t, p.n_sim_oc, kDefaultOcSims);
    append_design_warnings(t, p.designs);
    if (std::any_of(p.designs.begin(), p.designs.end(),
                    [](const DesignSpec& d) { return d.kind == DesignKind::PBB; }))
        t.warnings.push_back("PBB under the null (p0 = p1) sends every adaptive patient to arm 1");

    t.summary = "type-I / power x100, ours (published)\n";
    for (const auto& d : p.designs) {
        const bool wald = d.reported != ReportedTests::ScoreOnly;
        const bool score = d.reported != ReportedTests::WaldOnly;
        std::vector<BurnInOption> options{{BurnInKind::Min}};
        if (d.adaptive()) options = p.burnin_options;
        for (std::size_t slot = 0; slot < options.size(); ++slot) {
            const int b = d.adaptive() ? resolve_burnin(p, d, options[slot]) : 2;
            const OperatingCharacteristics oc = run_oc(p, d, b);
            const double nan = std::numeric_limits<double>::quiet_NaN();
            const double t1 = wald ? oc.type1_z1 : nan, t0 = score ? oc.type1_z0 : nan;
            const double w1 = wald ? oc.power_z1 : nan, w0 = score ? oc.power_z0 : nan;

            t.rows.push_back({d.label, d.adaptive() ? Cell{static_cast<long long>(b)} : Cell{},
                              num(t1), num(t0), num(w1), num(w0), num(oc.mean_prop_arm1),
                              num(oc.mse)});

            const OcRef* ref = find_reference_oc(name, d.label, static_cast<int>(slot));
            const auto pick = [&](double OcRef::*f) { return ref ? ref->*f : nan; };
            t.summary += fmt::format(
                "{:<9} {:>4} t1z1 {:<14} t1z0 {:<14} pwz1 {:<14} pwz0 {:<14} n1/n {:<14} mse {}\n",
                d.label, d.adaptive() ? std::to_string(b) : std::string("-"),
                pct_vs(t1, pick(&OcRef::type1_z1)), pct_vs(t0, pick(&OcRef::type1_z0)),
                pct_vs(w1, pick(&OcRef::power_z1)), pct_vs(w0, pick(&OcRef::power_z0)),
                raw_vs(oc.mean_prop_arm1, pick(&OcRef::prop_arm1), 3),
                raw_vs(oc.mse, pick(&OcRef::mse), 4));
        }
    }
    t.summary +=
        "note: the published n/3 rows carry their Z1 and Z0 columns in swapped positions; compare "
        "those rows crosswise\n";
    return t;
}

TableArtifact table_delta_grid(const TableOverrides& o) {
    TableArtifact t;
    t.id = TableId::Fig1;
    t.columns = {"p0", "p1", "delta"};
    const DeltaVariant v = o.variant.value_or(DeltaVariant::RSS);
    t.provenance = {{"version", RARBURN_VERSION},
                    {"table", "fig1"},
                    {"delta_variant", std::string(to_string(v))},
                    {"step", "0.005"}};
    constexpr int kSteps = 200;
    int at_least_one = 0;
    for (int i = 0; i <= kSteps; ++i) {
        for (int j = 0; j <= kSteps; ++j) {
            const double p0 = i / static_cast<double>(kSteps);
            const double p1 = j / static_cast<double>(kSteps);
            Cell delta;
            try {
                const double d = standardized_effect(p0, p1, v);
                delta = d;
                at_least_one += d >= 1.0;
            } catch (const Error&) {
                // 0/0 cells stay empty.
            }
            t.rows.push_back({p0, p1, delta});
        }
    }
    t.summary = fmt::format("{} of {} grid cells have delta >= 1\n", at_least_one,
                            (kSteps + 1) * (kSteps + 1));
    return t;
}

TableArtifact table_budget(const TableOverrides& o) {
    TableArtifact t;
    t.id = TableId::Fig2;
    t.columns = {"n", "budget"};
    const double n_half = o.n_half.value_or(1000.0);
    t.provenance = {{"version", RARBURN_VERSION}, {"table", "fig2"}, {"n_half", format_number(n_half)}};
    for (int n = 10; n <= 5000; n += 10) t.rows.push_back({static_cast<long long>(n), burnin_budget(n, n_half)});
    t.summary = fmt::format("largest total burn-in at n = 1000: {}\n",
                            format_number(burnin_budget(1000, n_half)));
    return t;
}

std::string cell_text(const Cell& c) {
    struct {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(const std::string& v) const {
            if (v.find_first_of(",\"\n") == std::string::npos) return v;
            std::string q = "\"";
            for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
    } visitor;
    return std::visit(visitor, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    struct {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(double v) const {
            if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
            return v;
        }
        nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    } visitor;
    return std::visit(visitor, c);
}

}  // namespace

std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

TableId parse_table_id(std::string_view s) {
    if (s == "t1") return TableId::T1;
    if (s == "t2") return TableId::T2;
    if (s == "t2-arrest") return TableId::T2Arrest;
    if (s == "t2-calisto") return TableId::T2Calisto;
    if (s == "t3") return TableId::T3;
    if (s == "t4") return TableId::T4;
    if (s == "fig1") return TableId::Fig1;
    if (s == "fig2") return TableId::Fig2;
    throw Error(ErrorCode::Configuration,
                "unknown table id '" + std::string(s) +
                    "' (t1|t2|t2-arrest|t2-calisto|t3|t4|fig1|fig2)");
}

std::string_view to_string(TableId id) {
    switch (id) {
        case TableId::T1: return "t1";
        case TableId::T2: return "t2";
        case TableId::T2Arrest: return "t2-arrest";
        case TableId::T2Calisto: return "t2-calisto";
        case TableId::T3: return "t3";
        case TableId::T4: return "t4";
        case TableId::Fig1: return "fig1";
        case TableId::Fig2: return "fig2";
    }
    return "?";
}

ScenarioProfile case_study_profile(std::string_view name) {
    ScenarioProfile p;
    const std::string key = upper(name);
    if (key == "ARREST") {
        p.scenario = {0.12, 0.37, 86, 1000.0, 0.05};
    } else if (key == "CALISTO") {
        p.scenario = {0.941, 0.991, 360, 1000.0, 0.05};
    } else {
        throw Error(ErrorCode::Configuration,
                    "unknown case study '" + std::string(name) + "' (arrest|calisto)");
    }
    p.name = key;
    p.designs = standard_designs();
    for (const auto& d : p.designs)
        if (auto b = reference_formula_b(key, d.label)) p.formula_b[d.label] = *b;
    return p;
}

TableArtifact reproduce_table(TableId id, const TableOverrides& overrides) {
    if (overrides.n_sim && *overrides.n_sim < 1)
        throw Error(ErrorCode::Configuration, "replication count must be positive");
    switch (id) {
        case TableId::T1: return table_sweep(overrides);
        case TableId::T2:
        case TableId::T2Arrest:
        case TableId::T2Calisto: return table_case_metrics(id, overrides);
        case TableId::T3:
        case TableId::T4: return table_oc(id, overrides);
        case TableId::Fig1: return table_delta_grid(overrides);
        case TableId::Fig2: return table_budget(overrides);
    }
    throw Error(ErrorCode::Configuration, "unknown table id");
}

std::string metric_reports_csv(const std::vector<MetricReport>& reports, double p0, double p1) {
    TableArtifact t;
    t.columns = kMetricColumns;
    t.columns.insert(t.columns.begin(), {"p0", "p1", "n", "delta"});
    for (const auto& m : reports) {
        std::vector<Cell> row{p0, p1, static_cast<long long>(m.n), m.delta};
        push_metric_cells(row, m);
        t.rows.push_back(std::move(row));
    }
    return t.csv();
}

std::string TableArtifact::csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string TableArtifact::json() const {
    nlohmann::ordered_json doc;
    doc["table"] = std::string(to_string(id));
    nlohmann::ordered_json prov = nlohmann::ordered_json::object();
    for (const auto& [k, v] : provenance) prov[k] = v;
    doc["provenance"] = prov;
    doc["columns"] = columns;
    nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i) r[columns[i]] = cell_json(row[i]);
        if (id == TableId::Fig1) {
            const auto* d = std::get_if<double>(&row[2]);
            r["at_least_one"] = d && *d >= 1.0;
        }
        rows_json.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows_json);
    doc["warnings"] = warnings;
    return doc.dump(2) + "\n";
}

}  // namespace rarburn
