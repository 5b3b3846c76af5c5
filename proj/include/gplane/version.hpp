#pragma once

namespace gplane {

inline constexpr const char* kToolName = "gplane";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace gplane
