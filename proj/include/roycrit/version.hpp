#pragma once

namespace roycrit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace roycrit
