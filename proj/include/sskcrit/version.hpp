#pragma once

#include <string_view>

namespace sskcrit {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace sskcrit
