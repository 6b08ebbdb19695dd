#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hpd::xml {

struct Attribute {
  std::string name;
  std::string value;
};

struct StartTag {
  std::string name;
  std::vector<Attribute> attributes;
  bool self_closing = false;

  const std::string* find(std::string_view attr_name) const {
    for (const auto& a : attributes) {
      if (a.name == attr_name) return &a.value;
    }
    return nullptr;
  }
};

/// Pull parser for the XML subset used by the corpus files: elements,
/// attributes, character data, CDATA, comments, processing instructions and
/// a DOCTYPE prolog. Well-formedness violations raise ParseError with the
/// byte offset of the failure.
///
/// Known character entities and numeric references are decoded; unknown
/// named entities are kept literally, which matches how the corpus files
/// use stray ampersands.
class Reader {
 public:
  enum class Event { kStartElement, kEndElement, kText, kEnd };

  explicit Reader(std::string_view input);

  Event next();

  const StartTag& start_tag() const { return start_; }
  const std::string& end_name() const { return end_name_; }
  const std::string& text() const { return text_; }

  /// Byte offset of the cursor (start of the next unread construct).
  std::size_t offset() const { return pos_; }

 private:
  char peek(std::size_t ahead = 0) const;
  bool eof() const { return pos_ >= input_.size(); }
  bool starts_with(std::string_view prefix) const;
  void skip_misc();
  void parse_start_tag();
  void parse_end_tag();
  std::string parse_name();
  std::string parse_attribute_value();
  std::string decode_entities(std::string_view raw, std::size_t base_offset);

  std::string_view input_;
  std::size_t pos_ = 0;
  StartTag start_;
  std::string end_name_;
  std::string text_;
  std::vector<std::string> open_elements_;
  bool pending_self_close_ = false;
};

}  // namespace hpd::xml
