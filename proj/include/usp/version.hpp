#pragma once

namespace usp {
inline constexpr const char* kVersion = "0.1.0";
}
