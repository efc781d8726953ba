#pragma once

#include <string>
#include <string_view>

#include "rarburn/harness.hpp"

namespace rarburn {

// Parses a scenario profile. The format is line oriented:
//
//   # comment
//   name = ARREST
//   p0 = 0.12
//   ...
//   [design]
//   id = n1
//   formula_b = 26
//
// Top-level keys are the ScenarioProfile fields. Each [design] section starts
// from make_design(id) and may override label, erade_alpha, estimator
// (mle|shrink), target (custom, with rho), tuning_scale, prior
// (a0,b0,a1,b1), urn_learns_from_burnin and formula_b. A profile without
// [design] sections uses the ten standard designs. Unknown keys, duplicate
// keys and malformed values throw Error(Parse) naming the line.
ScenarioProfile parse_profile(std::string_view text);

ScenarioProfile load_profile(const std::string& path);

}  // namespace rarburn
