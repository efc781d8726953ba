#pragma once

#include <stdexcept>
#include <string>

namespace rarburn {

enum class ErrorCode {
    InvalidScenario,
    InvalidBurnIn,
    InfeasibleBurnIn,
    Configuration,
    UndefinedEffect,
    DegenerateArm,
    UnsupportedLimit,
    Parse,
};

// All library failures caused by invalid input are reported with this type.
// Anything else escaping the library (I/O, allocation) is a runtime failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace rarburn
