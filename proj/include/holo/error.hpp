#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holo {

enum class ErrorKind {
    NotHermitian,
    NotUnitary,
    SingularT,
    IncommensurateRatio,
    NotCyclic,
    NotSU2,
    FluxMismatch,
    LeakageDetected,
    NoConvergence,
    IndexOutOfRange,
    InvalidInput,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::SingularT: return "SingularT";
        case ErrorKind::IncommensurateRatio: return "IncommensurateRatio";
        case ErrorKind::NotCyclic: return "NotCyclic";
        case ErrorKind::NotSU2: return "NotSU2";
        case ErrorKind::FluxMismatch: return "FluxMismatch";
        case ErrorKind::LeakageDetected: return "LeakageDetected";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (the CLI in particular) can map it to a stable machine-readable code.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string &message() const noexcept { return message_; }

  private:
    ErrorKind kind_;
    std::string message_;
};

}  // namespace holo
