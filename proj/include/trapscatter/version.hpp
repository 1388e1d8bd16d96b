#pragma once

namespace trapscatter {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace trapscatter
