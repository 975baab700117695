#pragma once

namespace hinv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hinv
