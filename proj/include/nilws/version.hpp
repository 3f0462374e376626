#pragma once

namespace nilws {

inline constexpr const char* version = "0.1.0";

} // namespace nilws
