#include "skinseg/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace skinseg {

std::string shortest_double(double value) {
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    return "nan";
  }
  return std::string(buf, ptr);
}

}  // namespace skinseg
