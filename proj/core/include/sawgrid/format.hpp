#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace sawgrid {

// Shortest decimal text that round-trips to the same double; locale
// independent, so CSV output is byte-stable.
inline std::string format_number(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

}  // namespace sawgrid
