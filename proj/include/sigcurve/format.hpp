#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace sigcurve {

/// Shortest general-format rendering with `digits` significant digits
/// (17 round-trips every double).
inline std::string format_double(double v, int digits = 17) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

}  // namespace sigcurve
