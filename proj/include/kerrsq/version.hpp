#pragma once

namespace kerrsq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kerrsq
