#include "hpd/sentiment/sentiment.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>

#include "hpd/error.hpp"

namespace hpd::sentiment {

SentimentFeatures score_article(const std::vector<std::string>& tokens,
                                const ValenceLexicon& lexicon, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw ConfigError("sentiment theta must lie in (0, 1)");
  }
  SentimentFeatures features;
  if (tokens.empty()) return features;

  const double n = static_cast<double>(tokens.size());
  double valence_sum = 0.0;
  std::size_t covered = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;

  for (const auto& token : tokens) {
    double valence = 0.0;
    auto it = lexicon.entries.find(token);
    if (it != lexicon.entries.end()) {
      valence = it->second;
      valence_sum += valence;
      ++covered;
    }
    if (valence > theta) ++positive;
    if (valence < -theta) ++negative;
  }

  features.polarity =
      covered > 0 ? valence_sum / static_cast<double>(covered) : 0.0;
  features.subjectivity = static_cast<double>(covered) / n;
  features.pos = static_cast<double>(positive) / n;
  features.neg = static_cast<double>(negative) / n;
  features.neu = 1.0 - features.pos - features.neg;
  return features;
}

ValenceLexicon load_lexicon(std::istream& stream, const std::string& name) {
  ValenceLexicon lexicon;
  lexicon.name = name;
  std::string line;
  std::size_t line_number = 0;

  while (std::getline(stream, line)) {
    ++line_number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);

    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ValidationError("lexicon line " + std::to_string(line_number) +
                            ": expected token<TAB>valence");
    }
    std::string token = line.substr(0, tab);
    std::string value_text = line.substr(tab + 1);
    char* parse_end = nullptr;
    double valence = std::strtod(value_text.c_str(), &parse_end);
    if (parse_end == value_text.c_str()) {
      throw ValidationError("lexicon line " + std::to_string(line_number) +
                            ": non-numeric valence \"" + value_text + "\"");
    }
    if (valence < -1.0 || valence > 1.0) {
      throw ValidationError("lexicon line " + std::to_string(line_number) +
                            ": valence " + value_text +
                            " outside [-1, 1]");
    }
    if (!lexicon.entries.emplace(token, valence).second) {
      throw DuplicateKeyError("lexicon line " + std::to_string(line_number) +
                              ": duplicate token \"" + token + "\"");
    }
  }
  return lexicon;
}

ValenceLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw IoError("cannot open lexicon file: " + path.string());
  }
  return load_lexicon(stream, path.filename().string());
}

}  // namespace hpd::sentiment
