#pragma once

namespace nodal {

inline constexpr const char* kVersion = "0.1.0";

} // namespace nodal
