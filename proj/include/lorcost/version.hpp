#pragma once

namespace lorcost {

inline constexpr const char* version = "0.1.0";

}  // namespace lorcost
