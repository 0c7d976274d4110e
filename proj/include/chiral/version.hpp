#pragma once

namespace chiral {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace chiral
