#pragma once

namespace teleopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace teleopt
