#pragma once

namespace dualpol {

inline constexpr const char* kToolVersion = "0.1.0";
// Bumped whenever a frozen oracle constant or sampling stream layout changes.
inline constexpr const char* kConstantsVersion = "1";

}  // namespace dualpol
