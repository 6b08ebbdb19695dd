#pragma once

namespace hpd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hpd
