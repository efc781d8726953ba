#include "rarburn/profile.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rarburn/error.hpp"

namespace rarburn {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

class LineError {
public:
    explicit LineError(int line) : line_(line) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::Parse, "profile line " + std::to_string(line_) + ": " + msg);
    }

    double real(std::string_view v) const {
        double x = 0;
        const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || end != v.data() + v.size())
            fail("expected a number, got '" + std::string(v) + "'");
        return x;
    }

    template <class Int>
    Int integer(std::string_view v) const {
        Int x = 0;
        const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || end != v.data() + v.size())
            fail("expected an integer, got '" + std::string(v) + "'");
        return x;
    }

    bool boolean(std::string_view v) const {
        if (v == "true" || v == "yes" || v == "1") return true;
        if (v == "false" || v == "no" || v == "0") return false;
        fail("expected true or false, got '" + std::string(v) + "'");
    }

    // Re-throws library validation errors with the line attached.
    template <class Fn>
    auto wrap(Fn&& fn) const {
        try {
            return fn();
        } catch (const Error& e) {
            fail(e.what());
        }
    }

private:
    int line_;
};

struct DesignSection {
    int line = 0;
    std::map<std::string, std::pair<std::string, int>> values;  // key -> (value, line)
};

DesignSpec build_design(const DesignSection& sec, ScenarioProfile& profile) {
    const auto id_it = sec.values.find("id");
    if (id_it == sec.values.end()) LineError(sec.line).fail("[design] section needs an id");
    const LineError id_line(id_it->second.second);
    DesignSpec d = id_line.wrap([&] { return make_design(id_it->second.first); });

    std::optional<double> rho;
    bool custom = false;
    std::optional<Estimator> estimator;
    std::optional<int> formula_b;
    for (const auto& [key, entry] : sec.values) {
        const auto& [value, line] = entry;
        const LineError at(line);
        if (key == "id") continue;
        if (key == "label") {
            d.label = value;
        } else if (key == "erade_alpha") {
            d.erade_alpha = at.real(value);
        } else if (key == "estimator") {
            if (value == "mle") estimator = Estimator::MLE;
            else if (value == "shrink") estimator = Estimator::HalfShrink;
            else at.fail("estimator must be mle or shrink");
        } else if (key == "target") {
            if (value != "custom") at.fail("target must be 'custom' (with rho = ...)");
            custom = true;
        } else if (key == "rho") {
            rho = at.real(value);
            if (!(*rho >= 0.0 && *rho <= 1.0)) at.fail("rho must lie in [0, 1]");
        } else if (key == "tuning_scale") {
            d.tuning.scale = at.real(value);
        } else if (key == "prior") {
            const auto parts = split_list(value);
            if (parts.size() != 4) at.fail("prior needs four values a0, b0, a1, b1");
            d.prior = {at.real(parts[0]), at.real(parts[1]), at.real(parts[2]), at.real(parts[3])};
        } else if (key == "urn_learns_from_burnin") {
            d.urn_learns_from_burnin = at.boolean(value);
        } else if (key == "formula_b") {
            formula_b = at.integer<int>(value);
            if (*formula_b < 2) at.fail("formula_b must be >= 2");
        } else {
            at.fail("unknown design key '" + key + "'");
        }
    }
    if (formula_b) profile.formula_b[d.label] = *formula_b;

    if (custom != rho.has_value())
        LineError(sec.line).fail("target = custom and rho must be given together");
    if (custom) {
        if (d.kind != DesignKind::EradeTarget)
            LineError(sec.line).fail("only target-allocation designs (n0, n1, r0, r1) take a custom target");
        const double value = *rho;
        const TargetId id = d.target->id;
        d.target = AllocationTarget::custom(id == TargetId::NeymanScore || id == TargetId::RshirScore
                                                ? id
                                                : TargetId::Custom,
                                            [value](double, double) { return value; });
    }
    if (estimator) {
        if (!d.target) LineError(sec.line).fail("estimator applies to target-allocation designs only");
        d.target->estimator = *estimator;
    }
    LineError(sec.line).wrap([&] { d.validate(); return 0; });
    return d;
}

}  // namespace

ScenarioProfile parse_profile(std::string_view text) {
    ScenarioProfile p;
    std::vector<DesignSection> sections;
    std::set<std::string> seen_top;

    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const LineError at(line_no);

        if (line.front() == '[') {
            if (line != "[design]") at.fail("unknown section '" + std::string(line) + "'");
            sections.push_back({line_no, {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) at.fail("expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty()) at.fail("empty key or value");

        if (!sections.empty()) {
            auto& values = sections.back().values;
            if (!values.emplace(key, std::make_pair(value, line_no)).second)
                at.fail("duplicate key '" + key + "'");
            continue;
        }
        if (!seen_top.insert(key).second) at.fail("duplicate key '" + key + "'");

        if (key == "name") p.name = value;
        else if (key == "p0") p.scenario.p0 = at.real(value);
        else if (key == "p1") p.scenario.p1 = at.real(value);
        else if (key == "n") p.scenario.n = at.integer<int>(value);
        else if (key == "n_half") p.scenario.n_half = at.real(value);
        else if (key == "alpha") p.scenario.alpha = at.real(value);
        else if (key == "n_sim_metrics") p.n_sim_metrics = at.integer<int>(value);
        else if (key == "n_sim_oc") p.n_sim_oc = at.integer<int>(value);
        else if (key == "seed") p.seed = at.integer<std::uint64_t>(value);
        else if (key == "threads") p.threads = at.integer<int>(value);
        else if (key == "delta_variant") p.delta_variant = at.wrap([&] { return parse_delta_variant(value); });
        else if (key == "mode") p.mode = at.wrap([&] { return parse_burnin_mode(value); });
        else if (key == "null_point") p.null_point = at.wrap([&] { return parse_null_point(value); });
        else if (key == "burnin_options") {
            p.burnin_options.clear();
            for (auto item : split_list(value))
                p.burnin_options.push_back(at.wrap([&] { return parse_burnin_option(item); }));
        } else {
            at.fail("unknown key '" + key + "'");
        }
    }

    if (sections.empty()) {
        p.designs = standard_designs();
    } else {
        for (const auto& sec : sections) p.designs.push_back(build_design(sec, p));
    }
    p.validate();
    return p;
}

ScenarioProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Configuration, "cannot open profile '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

}  // namespace rarburn
