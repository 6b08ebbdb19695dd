#include "hpd/corpus/text.hpp"

#include <algorithm>
#include <fstream>

#include "hpd/error.hpp"

namespace hpd::corpus {

namespace {

struct Utf8Char {
  std::uint32_t codepoint = 0;
  std::size_t length = 1;
};

/// Decodes one UTF-8 sequence; invalid bytes decode to U+FFFD of length 1,
/// which keeps the tokenizer total and deterministic on arbitrary input.
Utf8Char decode_utf8(std::string_view text, std::size_t pos) {
  const auto byte = [&](std::size_t i) -> std::uint32_t {
    return static_cast<unsigned char>(text[i]);
  };
  std::uint32_t b0 = byte(pos);
  if (b0 < 0x80) return {b0, 1};

  auto continuation = [&](std::size_t i) {
    return i < text.size() && (byte(i) & 0xc0) == 0x80;
  };
  if ((b0 & 0xe0) == 0xc0 && continuation(pos + 1)) {
    std::uint32_t cp = ((b0 & 0x1f) << 6) | (byte(pos + 1) & 0x3f);
    return Utf8Char{cp, 2};
  }
  if ((b0 & 0xf0) == 0xe0 && continuation(pos + 1) && continuation(pos + 2)) {
    std::uint32_t cp = ((b0 & 0x0f) << 12) | ((byte(pos + 1) & 0x3f) << 6) |
                       (byte(pos + 2) & 0x3f);
    return Utf8Char{cp, 3};
  }
  if ((b0 & 0xf8) == 0xf0 && continuation(pos + 1) && continuation(pos + 2) &&
      continuation(pos + 3)) {
    std::uint32_t cp = ((b0 & 0x07) << 18) | ((byte(pos + 1) & 0x3f) << 12) |
                       ((byte(pos + 2) & 0x3f) << 6) | (byte(pos + 3) & 0x3f);
    return Utf8Char{cp, 4};
  }
  return {0xfffd, 1};
}

bool is_ascii_digit(std::uint32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter(std::uint32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp < 0x80) return false;
  // Fixed range table for the scripts that occur in news text.
  static constexpr std::pair<std::uint32_t, std::uint32_t> kRanges[] = {
      {0x00aa, 0x00aa}, {0x00b5, 0x00b5}, {0x00ba, 0x00ba},
      {0x00c0, 0x00d6}, {0x00d8, 0x00f6}, {0x00f8, 0x02af},
      {0x0370, 0x0373}, {0x0376, 0x0377}, {0x037b, 0x037d},
      {0x0386, 0x0386}, {0x0388, 0x03ff}, {0x0400, 0x0481},
      {0x048a, 0x052f}, {0x0531, 0x0556}, {0x0561, 0x0587},
      {0x05d0, 0x05ea}, {0x0620, 0x064a}, {0x0660, 0x0669},
      {0x0671, 0x06d3}, {0x0904, 0x0939}, {0x0958, 0x0961},
      {0x3040, 0x30ff}, {0x4e00, 0x9fff}, {0xac00, 0xd7a3},
  };
  for (const auto& [lo, hi] : kRanges) {
    if (cp >= lo && cp <= hi) return true;
  }
  return false;
}

/// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic; other
/// codepoints pass through unchanged.
std::uint32_t to_lower(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0x00c0 && cp <= 0x00de && cp != 0x00d7) return cp + 0x20;
  if (cp >= 0x0100 && cp <= 0x0137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x014a && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x0178) return 0x00ff;
  if (cp >= 0x0179 && cp <= 0x017e) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x0391 && cp <= 0x03ab && cp != 0x03a2) return cp + 0x20;
  if (cp >= 0x0400 && cp <= 0x040f) return cp + 0x50;
  if (cp >= 0x0410 && cp <= 0x042f) return cp + 0x20;
  return cp;
}

void append_codepoint(std::string& out, std::uint32_t cp) {
  if (cp <= 0x7f) {
    out.push_back(static_cast<char>(cp));
  } else if (cp <= 0x7ff) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp <= 0xffff) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

bool matches_number_token(std::string_view text, std::size_t pos) {
  static constexpr std::string_view kToken = "<num>";
  if (pos + kToken.size() > text.size()) return false;
  for (std::size_t i = 0; i < kToken.size(); ++i) {
    char c = text[pos + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
    if (c != kToken[i]) return false;
  }
  return true;
}

bool is_space_char(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == '<' && matches_number_token(text, pos)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
      tokens.emplace_back(kNumberToken);
      pos += 5;
      continue;
    }
    Utf8Char c = decode_utf8(text, pos);
    if (is_letter(c.codepoint) || is_ascii_digit(c.codepoint)) {
      append_codepoint(current, to_lower(c.codepoint));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
    pos += c.length;
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> replace_numbers(std::vector<std::string> tokens) {
  for (auto& token : tokens) {
    if (token.empty()) continue;
    bool all_digits = std::all_of(token.begin(), token.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
    if (all_digits) token = kNumberToken;
  }
  return tokens;
}

const std::set<std::string>& default_abbreviations() {
  static const std::set<std::string> kAbbreviations = {
      "mr",   "mrs",  "ms",   "dr",    "prof", "rev",  "gen", "sen",
      "rep",  "gov",  "sgt",  "col",   "lt",   "capt", "cmdr", "hon",
      "jr",   "sr",   "st",   "mt",    "ft",   "etc",  "vs",  "inc",
      "corp", "co",   "ltd",  "dept",  "univ", "assn", "bros", "approx",
      "est",  "fig",  "no",   "vol",   "pp",   "al",   "jan", "feb",
      "mar",  "apr",  "jun",  "jul",   "aug",  "sep",  "sept", "oct",
      "nov",  "dec",  "mon",  "tue",   "wed",  "thu",  "fri", "sat",
      "sun",
  };
  return kAbbreviations;
}

SentenceSplitter::SentenceSplitter()
    : abbreviations_(default_abbreviations()) {}

SentenceSplitter::SentenceSplitter(std::set<std::string> abbreviations)
    : abbreviations_(std::move(abbreviations)) {}

SentenceSplitter SentenceSplitter::from_file(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw IoError("cannot open abbreviation file: " + path);
  }
  std::set<std::string> abbreviations;
  std::string line;
  while (std::getline(stream, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t begin = 0;
    std::size_t end = line.size();
    while (begin < end && is_space_char(line[begin])) ++begin;
    while (end > begin && is_space_char(line[end - 1])) --end;
    if (begin == end) continue;
    std::string entry = line.substr(begin, end - begin);
    std::transform(entry.begin(), entry.end(), entry.begin(), [](char c) {
      return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 0x20) : c;
    });
    abbreviations.insert(std::move(entry));
  }
  return SentenceSplitter(std::move(abbreviations));
}

std::vector<std::string> SentenceSplitter::split(std::string_view text) const {
  std::vector<std::string> sentences;
  std::size_t sentence_begin = 0;

  auto flush = [&](std::size_t end) {
    std::size_t begin = sentence_begin;
    while (begin < end && is_space_char(text[begin])) ++begin;
    std::size_t stop = end;
    while (stop > begin && is_space_char(text[stop - 1])) --stop;
    if (stop > begin) {
      sentences.emplace_back(text.substr(begin, stop - begin));
    }
    sentence_begin = end;
  };

  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c != '.' && c != '!' && c != '?') continue;
    bool at_end = pos + 1 >= text.size();
    if (!at_end && !is_space_char(text[pos + 1])) continue;

    if (c == '.') {
      // Abbreviation guard: the token directly before the period.
      std::size_t tok_end = pos;
      std::size_t tok_begin = tok_end;
      while (tok_begin > 0) {
        unsigned char prev = static_cast<unsigned char>(text[tok_begin - 1]);
        bool word_char = (prev >= 'a' && prev <= 'z') ||
                         (prev >= 'A' && prev <= 'Z') ||
                         (prev >= '0' && prev <= '9') || prev >= 0x80;
        if (!word_char) break;
        --tok_begin;
      }
      if (tok_end > tok_begin) {
        std::string token(text.substr(tok_begin, tok_end - tok_begin));
        std::transform(token.begin(), token.end(), token.begin(), [](char ch) {
          return (ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch + 0x20) : ch;
        });
        bool single_letter =
            token.size() == 1 && token[0] >= 'a' && token[0] <= 'z';
        if (single_letter || abbreviations_.count(token) > 0) continue;
      }
    }
    flush(pos + 1);
  }
  flush(text.size());
  return sentences;
}

TokenizedArticle truncate(TokenizedArticle article, std::size_t max_sentences,
                          std::size_t max_tokens) {
  if (article.sentences.size() > max_sentences) {
    article.sentences.resize(max_sentences);
  }
  for (auto& sentence : article.sentences) {
    if (sentence.size() > max_tokens) {
      sentence.resize(max_tokens);
    }
  }
  return article;
}

TokenizedArticle tokenize_article(const RawArticle& article,
                                  const SentenceSplitter& splitter) {
  TokenizedArticle tokenized;
  tokenized.id = article.id;
  auto add_text = [&](const std::string& text) {
    for (const auto& sentence : splitter.split(text)) {
      auto tokens = tokenize(sentence);
      if (tokens.empty()) continue;
      tokenized.token_count += tokens.size();
      tokenized.sentences.push_back(std::move(tokens));
    }
  };
  add_text(article.title);
  add_text(article.body);
  return tokenized;
}

}  // namespace hpd::corpus
