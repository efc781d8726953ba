#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace rarburn {

using Arm = std::uint8_t;  // 0 = control, 1 = treatment

struct TrialScenario {
    double p0 = 0.5;          // control response rate
    double p1 = 0.5;          // treatment response rate
    int n = 100;              // total patients
    double n_half = 1000.0;   // saturation parameter of the burn-in budget
    double alpha = 0.05;      // two-sided significance level

    // Throws Error(InvalidScenario) on any violated invariant.
    void validate() const;
};

// One realized trial. Entry i (0-based) describes patient i + 1.
class TrialPath {
public:
    TrialPath() = default;
    explicit TrialPath(int expected_size);

    void push(Arm arm, int outcome);

    int size() const noexcept { return static_cast<int>(assignments_.size()); }
    bool empty() const noexcept { return assignments_.empty(); }

    const std::vector<Arm>& assignments() const noexcept { return assignments_; }
    const std::vector<std::uint8_t>& outcomes() const noexcept { return outcomes_; }
    // running_n1()[i] is the number allocated to arm 1 after patient i + 1.
    const std::vector<int>& running_n1() const noexcept { return running_n1_; }

    int count(Arm arm) const noexcept { return counts_[arm]; }
    int successes(Arm arm) const noexcept { return successes_[arm]; }

    double proportion_arm1() const noexcept;

    // Checks every structural invariant; used by tests and debug builds.
    bool consistent() const;

private:
    std::vector<Arm> assignments_;
    std::vector<std::uint8_t> outcomes_;
    std::vector<int> running_n1_;
    std::array<int, 2> counts_{0, 0};
    std::array<int, 2> successes_{0, 0};
};

struct BurnInPlan {
    int b = 2;
    std::vector<Arm> schedule;  // length 2b, b of each arm
};

}  // namespace rarburn
