#pragma once

namespace asch {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace asch
