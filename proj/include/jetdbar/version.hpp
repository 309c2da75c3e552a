#pragma once

namespace jetdbar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace jetdbar
