#pragma once

#include <array>
#include <charconv>
#include <string>

namespace lorcost {

/// Shortest decimal text that round-trips to the same double ("2", "0.75").
inline std::string format_number(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) return std::to_string(x);
    return std::string(buf.data(), ptr);
}

}  // namespace lorcost
