#pragma once

namespace genvar {

inline constexpr const char* kVersion = "0.1.0";

} // namespace genvar
