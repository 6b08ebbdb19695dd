#include "hpd/embed/pooling.hpp"

#include "hpd/error.hpp"

namespace hpd::embed {

Eigen::VectorXd sentence_embedding(
    const std::vector<Eigen::VectorXd>& word_vectors) {
  if (word_vectors.empty()) {
    throw EmptySentenceError("sentence_embedding requires a non-empty list");
  }
  const Eigen::Index dim = word_vectors.front().size();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
  for (const auto& vector : word_vectors) {
    if (vector.size() != dim) {
      throw DimensionMismatchError(
          "sentence_embedding: mixed dimensions " + std::to_string(dim) +
          " and " + std::to_string(vector.size()));
    }
    sum += vector;
  }
  return sum / static_cast<double>(word_vectors.size());
}

Eigen::VectorXd sentence_embedding(
    const std::vector<std::vector<float>>& word_vectors) {
  std::vector<Eigen::VectorXd> converted;
  converted.reserve(word_vectors.size());
  for (const auto& vector : word_vectors) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(vector.size()));
    for (std::size_t i = 0; i < vector.size(); ++i) {
      v[static_cast<Eigen::Index>(i)] = static_cast<double>(vector[i]);
    }
    converted.push_back(std::move(v));
  }
  return sentence_embedding(converted);
}

SentenceMatrix article_matrix(const corpus::TokenizedArticle& article,
                              EmbeddingProvider& provider) {
  if (provider.info().mode != ProviderMode::kPerToken) {
    throw ProviderError("article_matrix requires a per_token provider");
  }
  const Eigen::Index dim = provider.info().dimension;
  SentenceMatrix matrix;
  matrix.article_id = article.id;
  matrix.rows.resize(static_cast<Eigen::Index>(article.sentences.size()), dim);
  matrix.valid_rows = static_cast<Eigen::Index>(article.sentences.size());

  for (std::size_t s = 0; s < article.sentences.size(); ++s) {
    std::vector<std::vector<float>> vectors;
    try {
      vectors = provider.embed_tokens(article.sentences[s]);
    } catch (const Error& e) {
      throw ProviderError("provider failed on sentence " + std::to_string(s) +
                          " of article " + article.id + ": " + e.what());
    }
    if (vectors.size() != article.sentences[s].size()) {
      throw ProviderError("provider returned " +
                          std::to_string(vectors.size()) + " vectors for " +
                          std::to_string(article.sentences[s].size()) +
                          " tokens (sentence " + std::to_string(s) + ")");
    }
    Eigen::VectorXd row = sentence_embedding(vectors);
    if (row.size() != dim) {
      throw ProviderInconsistencyError(
          "provider dimension drift: declared " + std::to_string(dim) +
          ", got " + std::to_string(row.size()));
    }
    if (!row.allFinite()) {
      throw ProviderError("non-finite embedding for sentence " +
                          std::to_string(s) + " of article " + article.id);
    }
    matrix.rows.row(static_cast<Eigen::Index>(s)) = row.transpose();
  }
  return matrix;
}

PooledEmbedding pooled_embedding(const SentenceMatrix& matrix) {
  if (matrix.valid_rows < 1) {
    throw EmptyArticleError("pooled_embedding requires at least one row");
  }
  PooledEmbedding pooled;
  pooled.article_id = matrix.article_id;
  pooled.vector = matrix.rows.topRows(matrix.valid_rows)
                      .colwise()
                      .mean()
                      .transpose();
  return pooled;
}

std::string sentence_text(const std::vector<std::string>& tokens) {
  std::string text;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) text.push_back(' ');
    text += tokens[i];
  }
  return text;
}

std::string article_text(const corpus::TokenizedArticle& article) {
  std::string text;
  for (std::size_t s = 0; s < article.sentences.size(); ++s) {
    if (s > 0) text.push_back('\n');
    text += sentence_text(article.sentences[s]);
  }
  return text;
}

}  // namespace hpd::embed
