#pragma once

namespace fieldmap {

inline constexpr const char* kVersion = "0.1.0";

} // namespace fieldmap
