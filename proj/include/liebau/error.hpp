#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liebau {

enum class ErrorKind {
    InvalidArgument,
    BadPeriod,
    MOutOfRange,
    PropertyViolation,
    NegativeState,
    BadRadii,
    KappaNonpositive,
    NoConvergence,
    LeftPositiveCone,
    NonpositiveLevel,
    Inapplicable,
    Config,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::BadPeriod: return "BadPeriod";
        case ErrorKind::MOutOfRange: return "MOutOfRange";
        case ErrorKind::PropertyViolation: return "PropertyViolation";
        case ErrorKind::NegativeState: return "NegativeState";
        case ErrorKind::BadRadii: return "BadRadii";
        case ErrorKind::KappaNonpositive: return "KappaNonpositive";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::LeftPositiveCone: return "LeftPositiveCone";
        case ErrorKind::NonpositiveLevel: return "NonpositiveLevel";
        case ErrorKind::Inapplicable: return "Inapplicable";
        case ErrorKind::Config: return "Config";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace liebau
