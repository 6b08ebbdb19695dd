#include "hpd/embed/cache.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>

#include "hpd/error.hpp"
#include "hpd/hash.hpp"

namespace hpd::embed {

namespace {

constexpr char kMagic[8] = {'H', 'P', 'D', 'E', 'M', 'B', 'C', '1'};

void put_u32(std::string& out, std::uint32_t value) {
  out.push_back(static_cast<char>(value & 0xff));
  out.push_back(static_cast<char>((value >> 8) & 0xff));
  out.push_back(static_cast<char>((value >> 16) & 0xff));
  out.push_back(static_cast<char>((value >> 24) & 0xff));
}

void put_u64(std::string& out, std::uint64_t value) {
  put_u32(out, static_cast<std::uint32_t>(value & 0xffffffffULL));
  put_u32(out, static_cast<std::uint32_t>(value >> 32));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint64_t get_u64(const unsigned char* p) {
  return static_cast<std::uint64_t>(get_u32(p)) |
         (static_cast<std::uint64_t>(get_u32(p + 4)) << 32);
}

std::string encode_payload(const std::vector<std::vector<float>>& vectors) {
  std::string payload;
  for (const auto& vector : vectors) {
    for (float value : vector) {
      put_u32(payload, std::bit_cast<std::uint32_t>(value));
    }
  }
  return payload;
}

}  // namespace

std::string CacheKey::canonical() const {
  return provider_id + "\x1f" + model_id + "\x1f" + article_id + "\x1f" +
         std::to_string(max_sentences) + "x" + std::to_string(max_tokens) +
         "\x1f" + to_hex(content_hash);
}

EmbeddingCache::EmbeddingCache(std::filesystem::path directory)
    : directory_(std::move(directory)) {
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) {
    throw IoError("cannot create cache directory " + directory_.string() +
                  ": " + ec.message());
  }
}

std::filesystem::path EmbeddingCache::path_for(const CacheKey& key) const {
  const std::string canonical = key.canonical();
  std::string h1 = to_hex(fnv1a64(canonical));
  std::string h2 = to_hex(fnv1a64(canonical, mix64(kFnvOffsetBasis)));
  std::string name = h1 + h2 + ".vec";
  return directory_ / h1.substr(0, 2) / h1.substr(2, 2) / name;
}

namespace {

std::optional<std::vector<std::vector<float>>> load_entry(
    const std::filesystem::path& path, const CacheKey& key) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) return std::nullopt;
  std::string bytes((std::istreambuf_iterator<char>(stream)),
                    std::istreambuf_iterator<char>());

  const std::string canonical = key.canonical();
  // magic(8) version(4) dim(4) count(4) checksum(8) key_len(4) key payload
  constexpr std::size_t kHeaderSize = 8 + 4 + 4 + 4 + 8 + 4;
  if (bytes.size() < kHeaderSize) return std::nullopt;
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    return std::nullopt;
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  std::uint32_t version = get_u32(p + 8);
  std::uint32_t dim = get_u32(p + 12);
  std::uint32_t count = get_u32(p + 16);
  std::uint64_t checksum = get_u64(p + 20);
  std::uint32_t key_len = get_u32(p + 28);
  if (version != 1) return std::nullopt;
  if (bytes.size() != kHeaderSize + key_len +
                          static_cast<std::size_t>(dim) * count * 4) {
    return std::nullopt;
  }
  std::string_view stored_key(bytes.data() + kHeaderSize, key_len);
  if (stored_key != canonical) return std::nullopt;
  std::string_view payload(bytes.data() + kHeaderSize + key_len,
                           static_cast<std::size_t>(dim) * count * 4);
  if (fnv1a64(payload.data(), payload.size()) != checksum) {
    return std::nullopt;
  }

  std::vector<std::vector<float>> vectors(count);
  const auto* q = reinterpret_cast<const unsigned char*>(payload.data());
  for (std::uint32_t i = 0; i < count; ++i) {
    vectors[i].resize(dim);
    for (std::uint32_t j = 0; j < dim; ++j) {
      vectors[i][j] = std::bit_cast<float>(get_u32(q));
      q += 4;
    }
  }
  return vectors;
}

}  // namespace

bool EmbeddingCache::contains(const CacheKey& key) const {
  return load_entry(path_for(key), key).has_value();
}

std::vector<std::vector<float>> EmbeddingCache::get_or_compute(
    const CacheKey& key, const Compute& compute) {
  const std::filesystem::path path = path_for(key);

  if (std::filesystem::exists(path)) {
    auto loaded = load_entry(path, key);
    if (loaded) {
      hits_.fetch_add(1);
      return *loaded;
    }
    std::cerr << "warning: invalidating corrupt cache entry " << path.string()
              << "\n";
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }

  std::vector<std::vector<float>> vectors = compute();
  computes_.fetch_add(1);

  std::uint32_t dim =
      vectors.empty() ? 0 : static_cast<std::uint32_t>(vectors.front().size());
  for (const auto& vector : vectors) {
    if (vector.size() != dim) {
      throw DimensionMismatchError(
          "cache entry rows must share one dimension");
    }
  }

  const std::string canonical = key.canonical();
  std::string payload = encode_payload(vectors);
  std::string bytes;
  bytes.reserve(36 + canonical.size() + payload.size());
  bytes.append(kMagic, sizeof(kMagic));
  put_u32(bytes, 1);  // version
  put_u32(bytes, dim);
  put_u32(bytes, static_cast<std::uint32_t>(vectors.size()));
  put_u64(bytes, fnv1a64(payload.data(), payload.size()));
  put_u32(bytes, static_cast<std::uint32_t>(canonical.size()));
  bytes += canonical;
  bytes += payload;

  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) {
    throw IoError("cannot create cache fan-out directory: " + ec.message());
  }

  std::filesystem::path temp =
      path.parent_path() /
      (path.filename().string() + ".tmp" +
       std::to_string(temp_counter_.fetch_add(1)) + "." +
       to_hex(mix64(reinterpret_cast<std::uintptr_t>(this))));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write cache entry: " + temp.string());
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }

  if (std::filesystem::exists(path)) {
    // Another writer won the race; keep its entry (write-once).
    std::filesystem::remove(temp, ec);
  } else {
    std::filesystem::rename(temp, path, ec);
    if (ec) {
      std::filesystem::remove(temp, ec);
    }
  }

  // Serve from disk so the caller sees exactly what later hits will see.
  auto stored = load_entry(path, key);
  if (stored) return *stored;
  return vectors;
}

}  // namespace hpd::embed
