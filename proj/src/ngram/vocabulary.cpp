#include "hpd/ngram/vocabulary.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "hpd/error.hpp"
#include "hpd/hash.hpp"

namespace hpd::ngram {

namespace {

void validate_orders(const std::set<int>& orders) {
  if (orders.empty()) {
    throw ConfigError("n-gram orders must not be empty");
  }
  for (int order : orders) {
    if (order != 1 && order != 2) {
      throw ConfigError("unsupported n-gram order " + std::to_string(order) +
                        ": only 1 and 2 are supported");
    }
  }
}

template <typename Fn>
void for_each_ngram(const corpus::TokenizedArticle& article,
                    const std::set<int>& orders, Fn&& fn) {
  for (const auto& sentence : article.sentences) {
    for (int order : orders) {
      std::size_t n = static_cast<std::size_t>(order);
      if (sentence.size() < n) continue;
      for (std::size_t i = 0; i + n <= sentence.size(); ++i) {
        fn(sentence, i, n);
      }
    }
  }
}

std::string join_tokens(const Ngram& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

std::uint64_t corpus_fingerprint(
    const std::vector<corpus::TokenizedArticle>& articles) {
  std::uint64_t h = kFnvOffsetBasis;
  for (const auto& article : articles) {
    h = fnv1a64(article.id, h);
    h = fnv1a64("\x1e", h);
    for (const auto& sentence : article.sentences) {
      for (const auto& token : sentence) {
        h = fnv1a64(token, h);
        h = fnv1a64("\x1f", h);
      }
      h = fnv1a64("\x1d", h);
    }
  }
  return h;
}

NgramVocabulary build_vocabulary(
    const std::vector<corpus::TokenizedArticle>& training_articles,
    const std::set<int>& orders, std::uint32_t cutoff) {
  validate_orders(orders);
  if (cutoff < 1) {
    throw ConfigError("n-gram cutoff must be >= 1");
  }
  if (training_articles.empty()) {
    throw EmptyCorpusError("build_vocabulary requires a non-empty training set");
  }

  std::map<Ngram, std::uint64_t> counts;
  for (const auto& article : training_articles) {
    for_each_ngram(article, orders,
                   [&](const std::vector<std::string>& sentence,
                       std::size_t begin, std::size_t n) {
                     Ngram key(sentence.begin() + static_cast<std::ptrdiff_t>(begin),
                               sentence.begin() + static_cast<std::ptrdiff_t>(begin + n));
                     ++counts[key];
                   });
  }

  NgramVocabulary vocabulary;
  vocabulary.cutoff = cutoff;
  vocabulary.orders = orders;
  vocabulary.fingerprint = corpus_fingerprint(training_articles);
  std::uint32_t column = 0;
  for (const auto& [key, count] : counts) {
    if (count >= cutoff) {
      vocabulary.index.emplace(key, VocabularyEntry{column++, count});
    }
  }
  return vocabulary;
}

NgramVector vectorize(const corpus::TokenizedArticle& article,
                      const NgramVocabulary& vocabulary, bool binary) {
  NgramVector vector;
  vector.dimension = vocabulary.dimension();
  Ngram key;
  for_each_ngram(article, vocabulary.orders,
                 [&](const std::vector<std::string>& sentence,
                     std::size_t begin, std::size_t n) {
                   key.assign(sentence.begin() + static_cast<std::ptrdiff_t>(begin),
                              sentence.begin() + static_cast<std::ptrdiff_t>(begin + n));
                   auto it = vocabulary.index.find(key);
                   if (it != vocabulary.index.end()) {
                     ++vector.entries[it->second.column];
                   }
                 });
  if (binary) {
    for (auto& [column, count] : vector.entries) {
      (void)column;
      count = 1;
    }
  }
  return vector;
}

void save_vocabulary(std::ostream& stream, const NgramVocabulary& vocabulary) {
  stream << "# hpd-ngram-vocabulary v1\n";
  stream << "# cutoff=" << vocabulary.cutoff;
  stream << " orders=";
  bool first = true;
  for (int order : vocabulary.orders) {
    if (!first) stream << ',';
    stream << order;
    first = false;
  }
  stream << " fingerprint=" << to_hex(vocabulary.fingerprint);
  stream << " entries=" << vocabulary.index.size() << "\n";
  stream << "# cutoff-semantics=collection-frequency (total count over the"
            " training articles)\n";
  for (const auto& [key, entry] : vocabulary.index) {
    stream << join_tokens(key) << '\t' << entry.column << '\t'
           << entry.fit_count << '\n';
  }
}

NgramVocabulary load_vocabulary(std::istream& stream) {
  NgramVocabulary vocabulary;
  vocabulary.orders.clear();
  std::string line;
  bool header_seen = false;
  std::size_t line_number = 0;

  while (std::getline(stream, line)) {
    ++line_number;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream header(line.substr(1));
      std::string field;
      while (header >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        std::string name = field.substr(0, eq);
        std::string value = field.substr(eq + 1);
        if (name == "cutoff") {
          vocabulary.cutoff = static_cast<std::uint32_t>(std::stoul(value));
          header_seen = true;
        } else if (name == "orders") {
          std::istringstream orders(value);
          std::string order;
          while (std::getline(orders, order, ',')) {
            vocabulary.orders.insert(std::stoi(order));
          }
        } else if (name == "fingerprint") {
          vocabulary.fingerprint = from_hex(value);
        }
      }
      continue;
    }
    auto tab1 = line.find('\t');
    auto tab2 = tab1 == std::string::npos ? std::string::npos
                                          : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos) {
      throw ParseError("malformed vocabulary line " +
                           std::to_string(line_number),
                       0);
    }
    Ngram key;
    std::istringstream tokens(line.substr(0, tab1));
    std::string token;
    while (tokens >> token) key.push_back(token);
    VocabularyEntry entry;
    entry.column =
        static_cast<std::uint32_t>(std::stoul(line.substr(tab1 + 1, tab2 - tab1 - 1)));
    entry.fit_count = std::stoull(line.substr(tab2 + 1));
    vocabulary.index.emplace(std::move(key), entry);
  }
  if (!header_seen) {
    throw ParseError("vocabulary file lacks a header", 0);
  }
  if (vocabulary.orders.empty()) vocabulary.orders = {1, 2};
  return vocabulary;
}

}  // namespace hpd::ngram
