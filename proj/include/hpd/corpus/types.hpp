#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hpd::corpus {

struct RawArticle {
  std::string id;
  std::string title;
  std::string body;
  std::optional<std::string> published_at;
};

enum class Label { kNotHyperpartisan = 0, kHyperpartisan = 1 };

/// Accepts the ground-truth serialization {"true", "false"}.
Label label_from_string(const std::string& value);
const char* to_string(Label label);

struct LabeledArticle {
  RawArticle article;
  Label label = Label::kNotHyperpartisan;
};

/// Sentence-segmented, tokenized article. `token_count` always holds the
/// pre-truncation total, so truncation keeps the original size visible.
struct TokenizedArticle {
  std::string id;
  std::vector<std::vector<std::string>> sentences;
  std::size_t token_count = 0;
};

struct CorpusStats {
  std::size_t n_articles = 0;
  std::size_t n_hyperpartisan = 0;
  std::size_t n_not = 0;
  std::size_t max_tokens = 0;
  std::size_t min_tokens = 0;
  double mean_tokens = 0.0;
};

/// Ids dropped on each side of the label join.
struct JoinSummary {
  std::vector<std::string> articles_without_label;
  std::vector<std::string> labels_without_article;

  bool empty() const {
    return articles_without_label.empty() && labels_without_article.empty();
  }
};

struct JoinResult {
  std::vector<LabeledArticle> joined;
  JoinSummary discarded;
};

}  // namespace hpd::corpus
