#include "hpd/embed/provider.hpp"

#include "hpd/error.hpp"
#include "hpd/hash.hpp"

namespace hpd::embed {

const char* to_string(ProviderMode mode) {
  return mode == ProviderMode::kPerToken ? "per_token" : "per_text";
}

ProviderMode provider_mode_from_string(const std::string& value) {
  if (value == "per_token") return ProviderMode::kPerToken;
  if (value == "per_text") return ProviderMode::kPerText;
  throw ConfigError("invalid provider mode \"" + value +
                    "\": expected per_token or per_text");
}

MockProvider::MockProvider(int dimension, std::uint64_t seed,
                           ProviderMode mode)
    : seed_(seed) {
  if (dimension <= 0) {
    throw ConfigError("mock provider dimension must be positive");
  }
  info_.provider_id = "mock";
  info_.model_id = "mock-d" + std::to_string(dimension) + "-s" +
                   std::to_string(seed);
  info_.dimension = dimension;
  info_.mode = mode;
}

std::vector<float> MockProvider::embed_one(const std::string& input) const {
  std::vector<float> vector(static_cast<std::size_t>(info_.dimension));
  std::uint64_t base = fnv1a64(input, mix64(seed_));
  for (int i = 0; i < info_.dimension; ++i) {
    std::uint64_t h = mix64(base ^ mix64(static_cast<std::uint64_t>(i)));
    // Top 53 bits -> [0,1) -> [-1,1); float rounding is the same everywhere.
    double unit = static_cast<double>(h >> 11) * 0x1.0p-53;
    vector[static_cast<std::size_t>(i)] =
        static_cast<float>(unit * 2.0 - 1.0);
  }
  return vector;
}

std::vector<std::vector<float>> MockProvider::embed_tokens(
    const std::vector<std::string>& tokens) {
  std::vector<std::vector<float>> vectors;
  vectors.reserve(tokens.size());
  for (const auto& token : tokens) {
    vectors.push_back(embed_one(token));
  }
  return vectors;
}

std::vector<std::vector<float>> MockProvider::embed_texts(
    const std::vector<std::string>& texts) {
  std::vector<std::vector<float>> vectors;
  vectors.reserve(texts.size());
  for (const auto& text : texts) {
    vectors.push_back(embed_one(text));
  }
  return vectors;
}

}  // namespace hpd::embed
