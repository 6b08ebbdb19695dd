#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hpd/corpus/types.hpp"

namespace hpd::corpus {

inline constexpr const char* kNumberToken = "<num>";
inline constexpr std::size_t kMaxSentences = 250;
inline constexpr std::size_t kMaxTokensPerSentence = 250;

/// Lowercases and splits text into maximal runs of letters/digits; the
/// literal token "<num>" is recognized as a token of its own so that
/// tokenization is a fixed point over re-joined token streams. Everything
/// else separates tokens. Letter classification covers ASCII plus the
/// common Latin/Greek/Cyrillic/CJK ranges; it is a fixed table, so output
/// is identical across platforms.
std::vector<std::string> tokenize(std::string_view text);

/// Rewrites tokens consisting only of ASCII digits to "<num>". Mixed
/// alphanumeric tokens are kept. Length-preserving and idempotent.
std::vector<std::string> replace_numbers(std::vector<std::string> tokens);

/// Sentence splitter: splits after '.', '!' or '?' followed by whitespace.
/// A '.' does not split when the token before it is a single letter or a
/// known abbreviation ('?' and '!' always split). Empty sentences are
/// dropped.
class SentenceSplitter {
 public:
  /// Built-in abbreviation guard list (mirrors data/abbreviations.txt).
  SentenceSplitter();
  explicit SentenceSplitter(std::set<std::string> abbreviations);

  static SentenceSplitter from_file(const std::string& path);

  std::vector<std::string> split(std::string_view text) const;

  const std::set<std::string>& abbreviations() const { return abbreviations_; }

 private:
  std::set<std::string> abbreviations_;
};

/// Default guard list; one lowercase entry per abbreviation, no trailing dot.
const std::set<std::string>& default_abbreviations();

/// Keeps the first `max_sentences` sentences, each clipped to its first
/// `max_tokens` tokens. `token_count` keeps the pre-truncation total.
TokenizedArticle truncate(TokenizedArticle article,
                          std::size_t max_sentences = kMaxSentences,
                          std::size_t max_tokens = kMaxTokensPerSentence);

/// Splits title and body into sentences and tokenizes each; `token_count`
/// is the total over all sentences (which equals the token count of the
/// concatenated text, since sentence boundaries are token separators).
TokenizedArticle tokenize_article(const RawArticle& article,
                                  const SentenceSplitter& splitter);

}  // namespace hpd::corpus
