#pragma once

namespace ifm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ifm
