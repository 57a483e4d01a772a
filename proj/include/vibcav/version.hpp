#pragma once

namespace vibcav {
inline constexpr const char* kVersion = "0.1.0";
}
