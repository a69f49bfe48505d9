#pragma once

namespace floqssh {

inline constexpr const char* kToolName = "floqssh";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace floqssh
