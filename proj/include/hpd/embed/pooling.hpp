#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "hpd/corpus/types.hpp"
#include "hpd/embed/provider.hpp"

namespace hpd::embed {

/// Per-sentence embedding rows for one article. `rows` may carry extra
/// padding rows past `valid_rows` when batched; padding is always appended,
/// never interleaved, so a count is a complete mask.
struct SentenceMatrix {
  std::string article_id;
  Eigen::MatrixXd rows;
  Eigen::Index valid_rows = 0;
};

struct PooledEmbedding {
  std::string article_id;
  Eigen::VectorXd vector;
};

/// Coordinate-wise arithmetic mean of the word vectors of one sentence.
Eigen::VectorXd sentence_embedding(
    const std::vector<Eigen::VectorXd>& word_vectors);
Eigen::VectorXd sentence_embedding(
    const std::vector<std::vector<float>>& word_vectors);

/// Builds the S x D sentence-embedding matrix for a truncated article using
/// a per_token provider; row s is the mean of the provider's vectors for
/// sentence s. Provider failures carry the sentence index.
SentenceMatrix article_matrix(const corpus::TokenizedArticle& article,
                              EmbeddingProvider& provider);

/// Coordinate-wise mean over the valid rows.
PooledEmbedding pooled_embedding(const SentenceMatrix& matrix);

/// Provider-facing text for one tokenized sentence (tokens joined by
/// spaces) and for a whole truncated article (sentences joined by
/// newlines). Number replacement is never applied here.
std::string sentence_text(const std::vector<std::string>& tokens);
std::string article_text(const corpus::TokenizedArticle& article);

}  // namespace hpd::embed
