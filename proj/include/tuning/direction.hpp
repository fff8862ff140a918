#pragma once

#include <string_view>

namespace tuning {

enum class Direction { Maximize, Minimize };

std::string_view to_string(Direction direction);
Direction parse_direction(std::string_view name); // "max"/"maximize"/"min"/"minimize"

} // namespace tuning
