#include "rarburn/scenario.hpp"

#include <cmath>
#include <string>

#include "rarburn/error.hpp"

namespace rarburn {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void TrialScenario::validate() const {
    if (!is_probability(p0) || !is_probability(p1))
        throw Error(ErrorCode::InvalidScenario, "response rates must lie in [0, 1]");
    if (n < 4)
        throw Error(ErrorCode::InvalidScenario,
                    "trial size must be at least 4 (got " + std::to_string(n) + ")");
    if (!(n_half >= 1.0) || !std::isfinite(n_half))
        throw Error(ErrorCode::InvalidScenario, "n_half must be a finite value >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorCode::InvalidScenario, "alpha must lie in (0, 1)");
}

TrialPath::TrialPath(int expected_size) {
    assignments_.reserve(expected_size);
    outcomes_.reserve(expected_size);
    running_n1_.reserve(expected_size);
}

void TrialPath::push(Arm arm, int outcome) {
    assignments_.push_back(arm);
    outcomes_.push_back(static_cast<std::uint8_t>(outcome));
    ++counts_[arm];
    successes_[arm] += outcome;
    running_n1_.push_back(counts_[1]);
}

double TrialPath::proportion_arm1() const noexcept {
    return empty() ? 0.5 : static_cast<double>(counts_[1]) / size();
}

bool TrialPath::consistent() const {
    const auto n = assignments_.size();
    if (outcomes_.size() != n || running_n1_.size() != n) return false;
    std::array<int, 2> counts{0, 0};
    std::array<int, 2> wins{0, 0};
    int prev = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Arm a = assignments_[i];
        if (a > 1 || outcomes_[i] > 1) return false;
        ++counts[a];
        wins[a] += outcomes_[i];
        if (running_n1_[i] != counts[1]) return false;
        if (running_n1_[i] - prev > 1 || running_n1_[i] < prev) return false;
        prev = running_n1_[i];
    }
    return counts == counts_ && wins == successes_ && wins[0] <= counts[0] &&
           wins[1] <= counts[1];
}

}  // namespace rarburn
