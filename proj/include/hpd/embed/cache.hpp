#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace hpd::embed {

/// Identity of one cached embedding computation. Two keys differing in any
/// field map to distinct entries.
struct CacheKey {
  std::string provider_id;
  std::string model_id;
  std::string article_id;
  int max_sentences = 0;
  int max_tokens = 0;
  std::uint64_t content_hash = 0;

  std::string canonical() const;
};

/// Write-once disk cache of float32 vector lists, one file per key under a
/// two-level fan-out derived from the key hash. Entries are stored as
/// little-endian IEEE floats behind a checksummed header, so a hit returns
/// bit-identical values. Concurrent writers race benignly: files are
/// written to a temp name and atomically renamed, and a loser discards its
/// temp file.
class EmbeddingCache {
 public:
  using Compute = std::function<std::vector<std::vector<float>>()>;

  explicit EmbeddingCache(std::filesystem::path directory);

  /// Returns the stored vectors for `key`, invoking `compute` only on a
  /// miss. A corrupt entry (checksum or key mismatch) is invalidated,
  /// recomputed and a warning is emitted on stderr.
  std::vector<std::vector<float>> get_or_compute(const CacheKey& key,
                                                 const Compute& compute);

  bool contains(const CacheKey& key) const;

  const std::filesystem::path& directory() const { return directory_; }

  std::size_t hits() const { return hits_.load(); }
  std::size_t computes() const { return computes_.load(); }

 private:
  std::filesystem::path path_for(const CacheKey& key) const;

  std::filesystem::path directory_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> computes_{0};
  std::atomic<std::uint64_t> temp_counter_{0};
};

}  // namespace hpd::embed
