#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hpd/corpus/types.hpp"

#include <json.hpp>

namespace hpd::corpus {

/// Token counts are taken pre-truncation over tokenize(title + body).
CorpusStats corpus_stats(const std::vector<LabeledArticle>& corpus);

/// Flat key-value text report.
std::string render_stats_text(const CorpusStats& stats);

nlohmann::json stats_to_json(const CorpusStats& stats);

}  // namespace hpd::corpus
