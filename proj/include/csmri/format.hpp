#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

namespace csmri {

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_number(double value) {
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

/// Fixed-point text with `digits` decimals; infinities print as `inf`.
inline std::string format_fixed(double value, int digits) {
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

/// Parses a full token as a double; `inf` is accepted. Returns false on junk.
inline bool parse_number(std::string_view text, double &out) {
  if (text == "inf" || text == "+inf") {
    out = HUGE_VAL;
    return true;
  }
  if (!text.empty() && text.front() == '+')
    text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size() && !text.empty();
}

} // namespace csmri
