#include "hpd/hash.hpp"

#include "hpd/error.hpp"

namespace hpd {

std::string to_hex(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::uint64_t from_hex(std::string_view hex) {
  std::uint64_t value = 0;
  if (hex.empty() || hex.size() > 16) {
    throw ValidationError("invalid hex string: \"" + std::string(hex) + "\"");
  }
  for (char c : hex) {
    value <<= 4;
    if (c >= '0' && c <= '9') {
      value |= static_cast<std::uint64_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      value |= static_cast<std::uint64_t>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      value |= static_cast<std::uint64_t>(c - 'A' + 10);
    } else {
      throw ValidationError("invalid hex string: \"" + std::string(hex) +
                            "\"");
    }
  }
  return value;
}

}  // namespace hpd
