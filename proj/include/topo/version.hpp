#pragma once

namespace topo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace topo
