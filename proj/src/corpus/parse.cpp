#include "hpd/corpus/parse.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "hpd/corpus/xml_reader.hpp"
#include "hpd/error.hpp"

#include <json.hpp>

namespace hpd::corpus {

namespace {

std::string collapse_whitespace(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::string read_stream(std::istream& stream) {
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

/// Consumes everything up to the matching end tag of the element just
/// opened, returning the concatenated text content. Nested markup is
/// dropped; element boundaries count as separators.
std::string consume_element_text(xml::Reader& reader) {
  std::string text;
  int depth = 1;
  while (depth > 0) {
    switch (reader.next()) {
      case xml::Reader::Event::kStartElement:
        ++depth;
        text.push_back(' ');
        break;
      case xml::Reader::Event::kEndElement:
        --depth;
        text.push_back(' ');
        break;
      case xml::Reader::Event::kText:
        text.append(reader.text());
        break;
      case xml::Reader::Event::kEnd:
        // Reader raises before this can happen inside an open element.
        return text;
    }
  }
  return text;
}

void skip_element(xml::Reader& reader) {
  int depth = 1;
  while (depth > 0) {
    switch (reader.next()) {
      case xml::Reader::Event::kStartElement:
        ++depth;
        break;
      case xml::Reader::Event::kEndElement:
        --depth;
        break;
      default:
        break;
    }
  }
}

}  // namespace

Label label_from_string(const std::string& value) {
  if (value == "true") return Label::kHyperpartisan;
  if (value == "false") return Label::kNotHyperpartisan;
  throw ValidationError("invalid label value \"" + value +
                        "\": expected \"true\" or \"false\"");
}

const char* to_string(Label label) {
  return label == Label::kHyperpartisan ? "true" : "false";
}

std::vector<RawArticle> parse_articles(std::string_view xml) {
  xml::Reader reader(xml);
  std::vector<RawArticle> articles;
  std::unordered_set<std::string> seen_ids;

  auto event = reader.next();
  if (event == xml::Reader::Event::kEnd) {
    throw ParseError("empty document", reader.offset());
  }
  if (event != xml::Reader::Event::kStartElement) {
    throw ParseError("expected a root element", reader.offset());
  }

  for (;;) {
    event = reader.next();
    if (event == xml::Reader::Event::kEndElement) break;  // root closed
    if (event == xml::Reader::Event::kText) continue;
    if (event == xml::Reader::Event::kEnd) break;

    const auto& tag = reader.start_tag();
    if (tag.name != "article") {
      skip_element(reader);
      continue;
    }

    RawArticle article;
    if (const std::string* id = tag.find("id")) {
      article.id = *id;
    } else {
      throw SchemaError("article element without an id attribute");
    }
    if (article.id.empty()) {
      throw SchemaError("article element with an empty id attribute");
    }
    if (!seen_ids.insert(article.id).second) {
      throw DuplicateKeyError("duplicate article id \"" + article.id + "\"");
    }
    if (const std::string* title = tag.find("title")) {
      article.title = collapse_whitespace(*title);
    }
    if (const std::string* published = tag.find("published-at")) {
      article.published_at = *published;
    }
    article.body = collapse_whitespace(consume_element_text(reader));
    articles.push_back(std::move(article));
  }

  // Drain the document so trailing malformed content is still diagnosed.
  while (event != xml::Reader::Event::kEnd) event = reader.next();
  return articles;
}

std::vector<RawArticle> parse_articles(std::istream& stream) {
  return parse_articles(std::string_view(read_stream(stream)));
}

std::map<std::string, Label> parse_ground_truth(std::string_view xml) {
  xml::Reader reader(xml);
  std::map<std::string, Label> labels;

  auto event = reader.next();
  if (event == xml::Reader::Event::kEnd) {
    throw ParseError("empty document", reader.offset());
  }
  if (event != xml::Reader::Event::kStartElement) {
    throw ParseError("expected a root element", reader.offset());
  }

  for (;;) {
    event = reader.next();
    if (event == xml::Reader::Event::kEndElement) break;
    if (event == xml::Reader::Event::kText) continue;
    if (event == xml::Reader::Event::kEnd) break;

    const auto& tag = reader.start_tag();
    if (tag.name != "article") {
      skip_element(reader);
      continue;
    }

    const std::string* id = tag.find("id");
    if (id == nullptr || id->empty()) {
      throw SchemaError("ground-truth element without an id attribute");
    }
    const std::string* value = tag.find("hyperpartisan");
    if (value == nullptr) {
      throw SchemaError("ground-truth element for id \"" + *id +
                        "\" without a hyperpartisan attribute");
    }
    Label label;
    try {
      label = label_from_string(*value);
    } catch (const ValidationError&) {
      throw ValidationError("invalid hyperpartisan value \"" + *value +
                            "\" for article id \"" + *id + "\"");
    }
    if (!labels.emplace(*id, label).second) {
      throw DuplicateKeyError("duplicate ground-truth id \"" + *id + "\"");
    }
    skip_element(reader);
  }

  while (event != xml::Reader::Event::kEnd) event = reader.next();
  return labels;
}

std::map<std::string, Label> parse_ground_truth(std::istream& stream) {
  return parse_ground_truth(std::string_view(read_stream(stream)));
}

JoinResult join_labels(const std::vector<RawArticle>& articles,
                       const std::map<std::string, Label>& labels) {
  JoinResult result;
  std::unordered_set<std::string> matched;
  matched.reserve(articles.size());

  for (const auto& article : articles) {
    auto it = labels.find(article.id);
    if (it == labels.end()) {
      result.discarded.articles_without_label.push_back(article.id);
      continue;
    }
    matched.insert(article.id);
    result.joined.push_back(LabeledArticle{article, it->second});
  }
  for (const auto& [id, label] : labels) {
    (void)label;
    if (matched.find(id) == matched.end()) {
      result.discarded.labels_without_article.push_back(id);
    }
  }
  return result;
}

std::vector<LabeledArticle> read_records(std::istream& stream) {
  std::vector<LabeledArticle> corpus;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_number = 0;

  while (std::getline(stream, line)) {
    ++line_number;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("invalid record on line " + std::to_string(line_number) +
                           ": " + e.what(),
                       0);
    }
    LabeledArticle entry;
    if (!record.contains("id") || !record["id"].is_string()) {
      throw SchemaError("record on line " + std::to_string(line_number) +
                        " lacks a string id field");
    }
    entry.article.id = record["id"].get<std::string>();
    if (entry.article.id.empty()) {
      throw SchemaError("record on line " + std::to_string(line_number) +
                        " has an empty id");
    }
    if (!seen_ids.insert(entry.article.id).second) {
      throw DuplicateKeyError("duplicate record id \"" + entry.article.id +
                              "\"");
    }
    entry.article.title = record.value("title", std::string());
    entry.article.body = record.value("body", std::string());
    if (record.contains("published_at") && record["published_at"].is_string()) {
      entry.article.published_at = record["published_at"].get<std::string>();
    }
    if (!record.contains("label")) {
      throw SchemaError("record on line " + std::to_string(line_number) +
                        " lacks a label field");
    }
    const auto& label = record["label"];
    if (label.is_boolean()) {
      entry.label = label.get<bool>() ? Label::kHyperpartisan
                                      : Label::kNotHyperpartisan;
    } else if (label.is_string()) {
      entry.label = label_from_string(label.get<std::string>());
    } else {
      throw ValidationError("record on line " + std::to_string(line_number) +
                            " has a non-boolean, non-string label");
    }
    corpus.push_back(std::move(entry));
  }
  return corpus;
}

std::vector<LabeledArticle> read_records_file(
    const std::filesystem::path& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw IoError("cannot open records file: " + path.string());
  }
  return read_records(stream);
}

void write_records(std::ostream& stream,
                   const std::vector<LabeledArticle>& corpus) {
  for (const auto& entry : corpus) {
    nlohmann::json record{
        {"id", entry.article.id},
        {"title", entry.article.title},
        {"body", entry.article.body},
        {"label", entry.label == Label::kHyperpartisan},
    };
    if (entry.article.published_at) {
      record["published_at"] = *entry.article.published_at;
    }
    stream << record.dump() << '\n';
  }
}

void write_records_file(const std::filesystem::path& path,
                        const std::vector<LabeledArticle>& corpus) {
  std::ofstream stream(path);
  if (!stream) {
    throw IoError("cannot open records file for writing: " + path.string());
  }
  write_records(stream, corpus);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw IoError("cannot open file: " + path.string());
  }
  return read_stream(stream);
}

}  // namespace hpd::corpus
