#pragma once

namespace cylclasses {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cylclasses
