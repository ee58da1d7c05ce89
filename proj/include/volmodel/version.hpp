#pragma once

namespace volmodel {

inline constexpr const char* kToolName = "volmodel";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace volmodel
