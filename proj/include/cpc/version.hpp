#pragma once

namespace cpc {

inline constexpr const char* kToolName = "cpcsim";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cpc
