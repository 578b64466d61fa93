#pragma once

namespace automol {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace automol
