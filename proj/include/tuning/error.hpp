#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tuning {

enum class ErrorCode {
    SingularSystem,
    BNotPositive,
    DegenerateChain,
    CycleLimit,
    DimensionMismatch,
    LabelOutOfRange,
    InvalidModel,
    InvalidStrategy,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Thrown by numeric operations. The code is stable and appears verbatim in CLI
/// error documents.
class TuningError : public std::runtime_error {
public:
    TuningError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace tuning
