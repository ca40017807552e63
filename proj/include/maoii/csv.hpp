#pragma once

#include <charconv>
#include <string>

namespace maoii {

/// Round-trip decimal representation of a double (shortest exact form).
inline std::string csv_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace maoii
