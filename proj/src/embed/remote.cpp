#include "hpd/embed/remote.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "hpd/error.hpp"

namespace hpd::embed {

namespace {

struct ParsedEndpoint {
  std::string host_and_port;  // scheme://host:port
  std::string path;
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("provider endpoint must include a scheme: " + endpoint);
  }
  auto path_begin = endpoint.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) {
    return {endpoint, "/"};
  }
  return {endpoint.substr(0, path_begin), endpoint.substr(path_begin)};
}

struct BatchRange {
  std::size_t begin;
  std::size_t end;
};

/// One POST with retries. Returns the decoded vectors for the batch.
std::vector<std::vector<float>> embed_batch(
    const ParsedEndpoint& endpoint, const RemoteConfig& config,
    const std::optional<std::string>& credential,
    const std::vector<std::string>& texts, const BatchRange& range,
    std::size_t batch_index) {
  nlohmann::json request{{"model", config.model_id},
                         {"input", nlohmann::json::array()}};
  for (std::size_t i = range.begin; i < range.end; ++i) {
    request["input"].push_back(texts[i]);
  }
  const std::string body = request.dump();

  httplib::Client client(endpoint.host_and_port);
  client.set_connection_timeout(30, 0);
  client.set_read_timeout(120, 0);
  httplib::Headers headers;
  if (credential) {
    headers.emplace("Authorization", "Bearer " + *credential);
  }

  std::string last_failure = "no attempt made";
  double backoff_ms = config.initial_backoff_ms;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(
          static_cast<long long>(backoff_ms)));
      backoff_ms = std::min(backoff_ms * config.backoff_factor,
                            config.max_backoff_ms);
    }

    auto response = client.Post(endpoint.path, headers, body,
                                "application/json");
    if (!response) {
      last_failure = "transport failure: " + httplib::to_string(response.error());
      continue;
    }
    if (response->status == 401 || response->status == 403) {
      throw CredentialError("embedding endpoint rejected credentials (HTTP " +
                            std::to_string(response->status) + ")");
    }
    if (response->status != 200) {
      last_failure = "HTTP " + std::to_string(response->status);
      if (response->status >= 400 && response->status < 500 &&
          response->status != 408 && response->status != 429) {
        // Client errors other than timeout/throttle will not heal.
        throw ProviderError("embedding endpoint error on batch " +
                            std::to_string(batch_index) + ": " + last_failure +
                            " " + response->body);
      }
      continue;
    }

    nlohmann::json payload;
    try {
      payload = nlohmann::json::parse(response->body);
    } catch (const nlohmann::json::exception& e) {
      last_failure = std::string("invalid JSON response: ") + e.what();
      continue;
    }
    if (!payload.contains("embeddings") || !payload["embeddings"].is_array()) {
      throw ProviderError("embedding response lacks an embeddings array");
    }
    const auto& rows = payload["embeddings"];
    if (rows.size() != range.end - range.begin) {
      throw ProviderError(
          "embedding endpoint returned " + std::to_string(rows.size()) +
          " vectors for " + std::to_string(range.end - range.begin) +
          " inputs (batch " + std::to_string(batch_index) + ")");
    }
    std::vector<std::vector<float>> vectors;
    vectors.reserve(rows.size());
    for (const auto& row : rows) {
      std::vector<float> vector;
      vector.reserve(row.size());
      for (const auto& value : row) {
        vector.push_back(value.get<float>());
      }
      vectors.push_back(std::move(vector));
    }
    return vectors;
  }

  throw TransportError("batch " + std::to_string(batch_index) + " (texts " +
                       std::to_string(range.begin) + ".." +
                       std::to_string(range.end - 1) + ") failed after " +
                       std::to_string(config.max_retries) +
                       " retries; last failure: " + last_failure);
}

}  // namespace

std::optional<std::string> RemoteConfig::credential() const {
  if (auth == "none") return std::nullopt;
  if (auth != "bearer") {
    throw ConfigError("provider auth must be \"bearer\" or \"none\", got \"" +
                      auth + "\"");
  }
  const char* value = std::getenv(api_key_env.c_str());
  if (value == nullptr || *value == '\0') {
    throw CredentialError("credential environment variable " + api_key_env +
                          " is not set");
  }
  return std::string(value);
}

std::vector<std::vector<float>> remote_embed(
    const std::vector<std::string>& texts, const RemoteConfig& config) {
  if (texts.empty()) return {};
  if (config.batch_limit < 1) {
    throw ConfigError("provider batch_limit must be >= 1");
  }
  if (config.max_concurrency < 1) {
    throw ConfigError("provider max_concurrency must be >= 1");
  }

  // Resolve the credential before any network activity.
  const std::optional<std::string> credential = config.credential();
  const ParsedEndpoint endpoint = parse_endpoint(config.endpoint);

  std::vector<BatchRange> batches;
  for (std::size_t begin = 0; begin < texts.size();
       begin += static_cast<std::size_t>(config.batch_limit)) {
    batches.push_back(
        {begin, std::min(texts.size(),
                         begin + static_cast<std::size_t>(config.batch_limit))});
  }

  std::vector<std::vector<std::vector<float>>> results(batches.size());
  std::atomic<std::size_t> next_batch{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    for (;;) {
      std::size_t index = next_batch.fetch_add(1);
      if (index >= batches.size() || failed.load()) return;
      try {
        results[index] = embed_batch(endpoint, config, credential, texts,
                                     batches[index], index);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const std::size_t n_workers = std::min(
      batches.size(), static_cast<std::size_t>(config.max_concurrency));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) {
      threads.emplace_back(worker);
    }
    for (auto& thread : threads) thread.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<std::vector<float>> vectors;
  vectors.reserve(texts.size());
  std::size_t dimension =
      config.dimension > 0 ? static_cast<std::size_t>(config.dimension) : 0;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    for (auto& vector : results[b]) {
      if (dimension == 0) dimension = vector.size();
      if (vector.size() != dimension) {
        throw ProviderInconsistencyError(
            "embedding dimension drift: expected " +
            std::to_string(dimension) + ", got " +
            std::to_string(vector.size()) + " in batch " + std::to_string(b));
      }
      vectors.push_back(std::move(vector));
    }
  }
  return vectors;
}

RemoteProvider::RemoteProvider(RemoteConfig config)
    : config_(std::move(config)) {
  info_.provider_id = "remote";
  info_.model_id = config_.model_id;
  info_.dimension = config_.dimension;
  info_.mode = ProviderMode::kPerText;
}

std::vector<std::vector<float>> RemoteProvider::embed_tokens(
    const std::vector<std::string>&) {
  throw ProviderError("remote provider is per_text; it has no token mode");
}

std::vector<std::vector<float>> RemoteProvider::embed_texts(
    const std::vector<std::string>& texts) {
  auto vectors = remote_embed(texts, config_);
  if (!vectors.empty() && info_.dimension == 0) {
    info_.dimension = static_cast<int>(vectors.front().size());
  }
  return vectors;
}

}  // namespace hpd::embed
