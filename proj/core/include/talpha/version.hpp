#pragma once

namespace talpha {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace talpha
