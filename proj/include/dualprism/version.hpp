#pragma once

namespace dualprism {

inline constexpr const char* kVersion = "0.1.0";

} // namespace dualprism
