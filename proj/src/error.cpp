#include "tuning/direction.hpp"
#include "tuning/error.hpp"

#include <stdexcept>
#include <string>

namespace tuning {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::SingularSystem: return "SINGULAR_SYSTEM";
    case ErrorCode::BNotPositive: return "B_NOT_POSITIVE";
    case ErrorCode::DegenerateChain: return "DEGENERATE_CHAIN";
    case ErrorCode::CycleLimit: return "CYCLE_LIMIT";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::LabelOutOfRange: return "LABEL_OUT_OF_RANGE";
    case ErrorCode::InvalidModel: return "INVALID_MODEL";
    case ErrorCode::InvalidStrategy: return "INVALID_STRATEGY";
    case ErrorCode::Io: return "IO_ERROR";
    }
    return "UNKNOWN";
}

std::string_view to_string(Direction direction) {
    return direction == Direction::Maximize ? "maximize" : "minimize";
}

Direction parse_direction(std::string_view name) {
    if (name == "max" || name == "maximize") return Direction::Maximize;
    if (name == "min" || name == "minimize") return Direction::Minimize;
    throw std::invalid_argument("unknown direction '" + std::string(name) + "'");
}

} // namespace tuning
