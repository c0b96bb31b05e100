#pragma once

namespace sdgreen {

inline constexpr const char* kVersion = "sdgreen 0.1.0";

}  // namespace sdgreen
