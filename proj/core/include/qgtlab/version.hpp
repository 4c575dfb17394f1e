#pragma once

namespace qgt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qgt
