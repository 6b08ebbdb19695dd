#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hpd {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

/// FNV-1a over raw bytes. Used for fingerprints and cache checksums; stable
/// across platforms by construction.
inline std::uint64_t fnv1a64(const void* data, std::size_t size,
                             std::uint64_t seed = kFnvOffsetBasis) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view text,
                             std::uint64_t seed = kFnvOffsetBasis) {
  return fnv1a64(text.data(), text.size(), seed);
}

/// Finalizer from splitmix64; good avalanche for combining integer values.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b));
}

/// Derives an independent stream seed from a base seed and salts.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  return mix64(base ^ mix64(salt + 0x51ed2701ULL));
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t s1,
                                 std::uint64_t s2) {
  return derive_seed(derive_seed(base, s1), s2);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t s1,
                                 std::uint64_t s2, std::uint64_t s3) {
  return derive_seed(derive_seed(base, s1, s2), s3);
}

std::string to_hex(std::uint64_t value);
std::uint64_t from_hex(std::string_view hex);

}  // namespace hpd
