#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hpd/corpus/types.hpp"

namespace hpd::corpus {

/// Parses the article corpus format: a root element holding `article`
/// elements with `id`, optional `published-at` and `title` attributes.
/// Inline markup inside an article is stripped; its text content is kept,
/// with markup boundaries treated as separators and whitespace runs
/// collapsed to single spaces.
std::vector<RawArticle> parse_articles(std::string_view xml);
std::vector<RawArticle> parse_articles(std::istream& stream);

/// Parses the ground-truth format: `article` elements with `id` and
/// `hyperpartisan` in {"true", "false"}.
std::map<std::string, Label> parse_ground_truth(std::string_view xml);
std::map<std::string, Label> parse_ground_truth(std::istream& stream);

/// Inner join on article id. Unmatched rows on either side are reported in
/// the discard summary, never dropped silently.
JoinResult join_labels(const std::vector<RawArticle>& articles,
                       const std::map<std::string, Label>& labels);

/// Line-delimited record format: one JSON object per line with fields
/// {id, title, body, label} and optional published_at. This is also the
/// corpus archive format written by the ingest command.
std::vector<LabeledArticle> read_records(std::istream& stream);
std::vector<LabeledArticle> read_records_file(const std::filesystem::path& path);
void write_records(std::ostream& stream,
                   const std::vector<LabeledArticle>& corpus);
void write_records_file(const std::filesystem::path& path,
                        const std::vector<LabeledArticle>& corpus);

std::string read_file(const std::filesystem::path& path);

}  // namespace hpd::corpus
