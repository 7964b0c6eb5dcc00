#pragma once

namespace fatlines {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fatlines
