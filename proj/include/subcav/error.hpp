#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subcav {

enum class ErrorKind {
    InvalidArgument,
    OutOfDomain,
    NonTransparent,
    NonPositiveFrequency,
    NoRootInBracket,
    MultipleRoots,
    QuadratureNotConverged,
    WindowTooNarrow,
    ZeroGroupVelocity,
    NoPropagatingMode,
    BelowCutoff,
    AtCutoff,
    NonUniformStack,
    Unstable,
    StepTooLarge,
    Config,
};

/// Coarse grouping used by the command line tool to pick an exit code.
enum class ErrorCategory { Config, Physics, Numerical };

constexpr std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NonTransparent: return "NonTransparent";
    case ErrorKind::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorKind::NoRootInBracket: return "NoRootInBracket";
    case ErrorKind::MultipleRoots: return "MultipleRoots";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorKind::ZeroGroupVelocity: return "ZeroGroupVelocity";
    case ErrorKind::NoPropagatingMode: return "NoPropagatingMode";
    case ErrorKind::BelowCutoff: return "BelowCutoff";
    case ErrorKind::AtCutoff: return "AtCutoff";
    case ErrorKind::NonUniformStack: return "NonUniformStack";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::Config: return "Config";
    }
    return "Unknown";
}

constexpr ErrorCategory category(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::InvalidArgument:
        return ErrorCategory::Config;
    case ErrorKind::NoRootInBracket:
    case ErrorKind::MultipleRoots:
    case ErrorKind::QuadratureNotConverged:
    case ErrorKind::WindowTooNarrow:
    case ErrorKind::StepTooLarge:
        return ErrorCategory::Numerical;
    default:
        return ErrorCategory::Physics;
    }
}

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

}  // namespace subcav
