#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hpd/corpus/types.hpp"

namespace hpd::ngram {

/// An n-gram is the token sequence itself; std::map over these yields the
/// lexicographic column order the vocabulary file format requires.
using Ngram = std::vector<std::string>;

struct VocabularyEntry {
  std::uint32_t column = 0;
  std::uint64_t fit_count = 0;
};

struct NgramVocabulary {
  std::map<Ngram, VocabularyEntry> index;
  std::uint32_t cutoff = 1;
  std::set<int> orders{1, 2};
  std::uint64_t fingerprint = 0;

  std::size_t dimension() const { return index.size(); }
};

/// Sparse count vector over a fitted vocabulary. Entries hold counts >= 1.
struct NgramVector {
  std::map<std::uint32_t, std::uint32_t> entries;
  std::size_t dimension = 0;
};

/// Counts n-grams within sentences (bigrams never span sentence
/// boundaries) over the whole training set and keeps those whose total
/// collection frequency reaches the cutoff. Column ids follow lexicographic
/// n-gram order. Articles are expected to be number-replaced already.
NgramVocabulary build_vocabulary(
    const std::vector<corpus::TokenizedArticle>& training_articles,
    const std::set<int>& orders, std::uint32_t cutoff);

/// In-vocabulary n-gram counts for one article; out-of-vocabulary n-grams
/// are ignored. With `binary` set, present n-grams count as 1.
NgramVector vectorize(const corpus::TokenizedArticle& article,
                      const NgramVocabulary& vocabulary, bool binary = false);

/// Order-sensitive hash over article ids and token content; stored in the
/// vocabulary header so experiments are self-describing.
std::uint64_t corpus_fingerprint(
    const std::vector<corpus::TokenizedArticle>& articles);

void save_vocabulary(std::ostream& stream, const NgramVocabulary& vocabulary);
NgramVocabulary load_vocabulary(std::istream& stream);

}  // namespace hpd::ngram
