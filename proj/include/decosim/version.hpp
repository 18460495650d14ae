#pragma once

namespace decosim {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace decosim
