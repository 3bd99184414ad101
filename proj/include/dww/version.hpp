#pragma once

namespace dww {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dww
