#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rarburn/harness.hpp"

namespace rarburn {

enum class TableId { T1, T2, T2Arrest, T2Calisto, T3, T4, Fig1, Fig2 };

// t1, t2, t2-arrest, t2-calisto, t3, t4, fig1, fig2.
TableId parse_table_id(std::string_view s);
std::string_view to_string(TableId id);

// The two case studies with the settings that reproduce their published
// tables: "ARREST" (0.12 vs 0.37, n = 86) and "CALISTO" (0.941 vs 0.991,
// n = 360). Case-insensitive.
ScenarioProfile case_study_profile(std::string_view name);

struct TableOverrides {
    std::optional<int> n_sim;  // replication count of the table's main run
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::optional<DeltaVariant> variant;
    std::optional<BurnInMode> mode;
    std::optional<double> n_half;
    std::optional<NullPoint> null_point;
    // FORMULA rows of T3/T4 take b from a fresh metrics run instead of the
    // published metrics table.
    bool computed_formula_b = false;
    std::vector<int> sweep_n{200, 500, 1000, 2000};
    // Design ids to keep (empty keeps all ten).
    std::vector<std::string> designs;
};

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct TableArtifact {
    TableId id = TableId::T1;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // Ordered key/value pairs needed to rerun the table.
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<std::string> warnings;
    // Human-readable comparison against the bundled published values.
    std::string summary;

    std::string csv() const;
    std::string json() const;
};

TableArtifact reproduce_table(TableId id, const TableOverrides& overrides = {});

// Metric reports as CSV in the case-study table layout (raw p0/p1/n
// columns first).
std::string metric_reports_csv(const std::vector<MetricReport>& reports, double p0, double p1);

// Shortest round-trip decimal form; "inf" for infinity.
std::string format_number(double x);

}  // namespace rarburn
