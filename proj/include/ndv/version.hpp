#pragma once

namespace ndv {

inline constexpr const char* version = "1.0.0";

/// Bumped whenever the edge-list or CSV layouts change.
inline constexpr int format_version = 1;

} // namespace ndv
