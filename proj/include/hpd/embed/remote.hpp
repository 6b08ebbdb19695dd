#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hpd/embed/provider.hpp"

namespace hpd::embed {

/// Remote embedding endpoint configuration. Endpoint, model and credentials
/// come from configuration or the environment, never from CLI flags. The
/// credential is read from the environment variable named by
/// `api_key_env`; set `auth` to "none" for unauthenticated endpoints.
struct RemoteConfig {
  std::string endpoint;  // e.g. http://localhost:8080/embed
  std::string model_id;
  int dimension = 0;  // 0 = accept the first batch's dimension
  int batch_limit = 16;
  int max_concurrency = 2;
  int max_retries = 5;
  double initial_backoff_ms = 100.0;
  double backoff_factor = 2.0;
  double max_backoff_ms = 5000.0;
  std::string auth = "bearer";  // "bearer" or "none"
  std::string api_key_env = "HPD_API_KEY";

  /// Resolves the credential; throws CredentialError when auth is enabled
  /// and the environment variable is missing or empty.
  std::optional<std::string> credential() const;
};

/// Embeds a batch of texts through the HTTP endpoint. Texts are split into
/// batches of at most `batch_limit`, at most `max_concurrency` requests are
/// in flight at once, transient failures are retried with exponential
/// backoff, and outputs are reassembled in input order.
///
/// Wire format: POST with JSON {"model": <model_id>, "input": [<texts>]}
/// answered by {"embeddings": [[...], ...]} with one float array per input.
std::vector<std::vector<float>> remote_embed(
    const std::vector<std::string>& texts, const RemoteConfig& config);

/// per_text provider backed by remote_embed.
class RemoteProvider : public EmbeddingProvider {
 public:
  explicit RemoteProvider(RemoteConfig config);

  const ProviderInfo& info() const override { return info_; }
  std::vector<std::vector<float>> embed_tokens(
      const std::vector<std::string>& tokens) override;
  std::vector<std::vector<float>> embed_texts(
      const std::vector<std::string>& texts) override;

 private:
  RemoteConfig config_;
  ProviderInfo info_;
};

}  // namespace hpd::embed
