#include "hpd/corpus/stats.hpp"

#include <cstdio>
#include <limits>

#include "hpd/corpus/text.hpp"
#include "hpd/error.hpp"

namespace hpd::corpus {

CorpusStats corpus_stats(const std::vector<LabeledArticle>& corpus) {
  if (corpus.empty()) {
    throw EmptyCorpusError("corpus_stats requires a non-empty corpus");
  }
  CorpusStats stats;
  stats.n_articles = corpus.size();
  stats.min_tokens = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  for (const auto& entry : corpus) {
    if (entry.label == Label::kHyperpartisan) {
      ++stats.n_hyperpartisan;
    } else {
      ++stats.n_not;
    }
    std::size_t n =
        tokenize(entry.article.title + "\n" + entry.article.body).size();
    total += n;
    stats.max_tokens = std::max(stats.max_tokens, n);
    stats.min_tokens = std::min(stats.min_tokens, n);
  }
  stats.mean_tokens =
      static_cast<double>(total) / static_cast<double>(stats.n_articles);
  return stats;
}

std::string render_stats_text(const CorpusStats& stats) {
  char mean[32];
  std::snprintf(mean, sizeof(mean), "%.2f", stats.mean_tokens);
  std::string out;
  out += "articles            " + std::to_string(stats.n_articles) + "\n";
  out += "hyperpartisan       " + std::to_string(stats.n_hyperpartisan) + "\n";
  out += "not_hyperpartisan   " + std::to_string(stats.n_not) + "\n";
  out += "max_tokens          " + std::to_string(stats.max_tokens) + "\n";
  out += "min_tokens          " + std::to_string(stats.min_tokens) + "\n";
  out += "mean_tokens         " + std::string(mean) + "\n";
  return out;
}

nlohmann::json stats_to_json(const CorpusStats& stats) {
  return nlohmann::json{
      {"n_articles", stats.n_articles},
      {"n_hyperpartisan", stats.n_hyperpartisan},
      {"n_not_hyperpartisan", stats.n_not},
      {"max_tokens", stats.max_tokens},
      {"min_tokens", stats.min_tokens},
      {"mean_tokens", stats.mean_tokens},
  };
}

}  // namespace hpd::corpus
