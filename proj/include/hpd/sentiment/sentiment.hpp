#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace hpd::sentiment {

/// token -> signed valence in [-1, 1]; tokens are lowercase and
/// tokenizer-compatible.
struct ValenceLexicon {
  std::unordered_map<std::string, double> entries;
  std::string name;
};

/// The five emotionality features. pos + neg + neu = 1 exactly because
/// neu is computed as the residual.
struct SentimentFeatures {
  double polarity = 0.0;
  double subjectivity = 0.0;
  double pos = 0.0;
  double neg = 0.0;
  double neu = 1.0;
};

/// Lexicon-average scoring. With N = |tokens| and C the tokens found in
/// the lexicon: polarity is the mean valence over C (0 when C is empty),
/// subjectivity is |C|/N, pos/neg are the fractions of tokens with valence
/// above theta / below -theta (missing tokens count as valence 0), and
/// neu = 1 - pos - neg.
SentimentFeatures score_article(const std::vector<std::string>& tokens,
                                const ValenceLexicon& lexicon,
                                double theta = 0.1);

/// File format: "token<TAB>valence" lines; '#' starts a comment.
ValenceLexicon load_lexicon(std::istream& stream, const std::string& name);
ValenceLexicon load_lexicon(const std::filesystem::path& path);

}  // namespace hpd::sentiment
