#pragma once

namespace discord_dyn {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace discord_dyn
