#pragma once

namespace windar {

inline constexpr const char* version = "0.1.0";

}  // namespace windar
