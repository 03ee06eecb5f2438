#pragma once

#include <string_view>

namespace fluxon {

inline constexpr std::string_view kToolName = "fluxonsim";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace fluxon
