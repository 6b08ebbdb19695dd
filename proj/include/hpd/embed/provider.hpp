#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hpd::embed {

enum class ProviderMode { kPerToken, kPerText };

const char* to_string(ProviderMode mode);
ProviderMode provider_mode_from_string(const std::string& value);

struct ProviderInfo {
  std::string provider_id;
  std::string model_id;
  int dimension = 0;
  ProviderMode mode = ProviderMode::kPerToken;
};

/// Pluggable source of word- or text-level vectors. Implementations must be
/// safely callable from multiple threads and deterministic for a fixed
/// (model_id, input) unless they declare otherwise.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual const ProviderInfo& info() const = 0;

  /// One vector per token (per_token providers).
  virtual std::vector<std::vector<float>> embed_tokens(
      const std::vector<std::string>& tokens) = 0;

  /// One vector per text (per_text providers).
  virtual std::vector<std::vector<float>> embed_texts(
      const std::vector<std::string>& texts) = 0;
};

/// Hermetic provider: vector[i] is a hash of (token, i, seed) mapped into
/// [-1, 1]. Supports both modes and is bit-deterministic across platforms.
class MockProvider : public EmbeddingProvider {
 public:
  MockProvider(int dimension, std::uint64_t seed,
               ProviderMode mode = ProviderMode::kPerToken);

  const ProviderInfo& info() const override { return info_; }
  std::vector<std::vector<float>> embed_tokens(
      const std::vector<std::string>& tokens) override;
  std::vector<std::vector<float>> embed_texts(
      const std::vector<std::string>& texts) override;

  /// The mock embedding of one string; exposed so tests can recompute
  /// expected values independently of the batching path.
  std::vector<float> embed_one(const std::string& input) const;

 private:
  ProviderInfo info_;
  std::uint64_t seed_;
};

}  // namespace hpd::embed
