#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace hyperfix {

/// Shortest decimal string that parses back to exactly the same double.
/// Locale independent; infinities and NaN print as "inf"/"nan".
inline std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_size(std::uint64_t v) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace hyperfix
