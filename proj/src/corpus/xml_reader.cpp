#include "hpd/corpus/xml_reader.hpp"

#include <cctype>

#include "hpd/error.hpp"

namespace hpd::xml {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == ':' || c == '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
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

}  // namespace

Reader::Reader(std::string_view input) : input_(input) {
  // Skip a UTF-8 BOM if present.
  if (input_.size() >= 3 && static_cast<unsigned char>(input_[0]) == 0xef &&
      static_cast<unsigned char>(input_[1]) == 0xbb &&
      static_cast<unsigned char>(input_[2]) == 0xbf) {
    pos_ = 3;
  }
}

char Reader::peek(std::size_t ahead) const {
  return pos_ + ahead < input_.size() ? input_[pos_ + ahead] : '\0';
}

bool Reader::starts_with(std::string_view prefix) const {
  return input_.compare(pos_, prefix.size(), prefix) == 0;
}

void Reader::skip_misc() {
  for (;;) {
    if (starts_with("<?")) {
      auto end = input_.find("?>", pos_);
      if (end == std::string_view::npos) {
        throw ParseError("unterminated processing instruction", pos_);
      }
      pos_ = end + 2;
    } else if (starts_with("<!--")) {
      auto end = input_.find("-->", pos_);
      if (end == std::string_view::npos) {
        throw ParseError("unterminated comment", pos_);
      }
      pos_ = end + 3;
    } else if (starts_with("<!DOCTYPE")) {
      int depth = 0;
      std::size_t i = pos_;
      for (; i < input_.size(); ++i) {
        if (input_[i] == '[') ++depth;
        if (input_[i] == ']') --depth;
        if (input_[i] == '>' && depth == 0) break;
      }
      if (i >= input_.size()) {
        throw ParseError("unterminated DOCTYPE declaration", pos_);
      }
      pos_ = i + 1;
    } else {
      return;
    }
  }
}

std::string Reader::parse_name() {
  std::size_t begin = pos_;
  while (!eof() && is_name_char(input_[pos_])) ++pos_;
  if (pos_ == begin) {
    throw ParseError("expected a name", begin);
  }
  return std::string(input_.substr(begin, pos_ - begin));
}

std::string Reader::decode_entities(std::string_view raw,
                                    std::size_t base_offset) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    if (raw[i] != '&') {
      out.push_back(raw[i]);
      ++i;
      continue;
    }
    auto semi = raw.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');  // bare ampersand, kept literally
      ++i;
      continue;
    }
    std::string_view entity = raw.substr(i + 1, semi - i - 1);
    if (entity == "amp") {
      out.push_back('&');
    } else if (entity == "lt") {
      out.push_back('<');
    } else if (entity == "gt") {
      out.push_back('>');
    } else if (entity == "quot") {
      out.push_back('"');
    } else if (entity == "apos") {
      out.push_back('\'');
    } else if (!entity.empty() && entity[0] == '#') {
      std::uint32_t cp = 0;
      bool ok = entity.size() > 1;
      if (entity.size() > 2 && (entity[1] == 'x' || entity[1] == 'X')) {
        for (std::size_t k = 2; k < entity.size() && ok; ++k) {
          char c = entity[k];
          if (c >= '0' && c <= '9') {
            cp = cp * 16 + static_cast<std::uint32_t>(c - '0');
          } else if (c >= 'a' && c <= 'f') {
            cp = cp * 16 + static_cast<std::uint32_t>(c - 'a' + 10);
          } else if (c >= 'A' && c <= 'F') {
            cp = cp * 16 + static_cast<std::uint32_t>(c - 'A' + 10);
          } else {
            ok = false;
          }
        }
        ok = ok && entity.size() > 2;
      } else {
        for (std::size_t k = 1; k < entity.size() && ok; ++k) {
          char c = entity[k];
          if (c >= '0' && c <= '9') {
            cp = cp * 10 + static_cast<std::uint32_t>(c - '0');
          } else {
            ok = false;
          }
        }
      }
      if (!ok || cp > 0x10ffff) {
        throw ParseError("invalid character reference &" +
                             std::string(entity) + ";",
                         base_offset + i);
      }
      append_utf8(out, cp);
    } else {
      // Unknown named entity: keep literally.
      out.append(raw.substr(i, semi - i + 1));
    }
    i = semi + 1;
  }
  return out;
}

std::string Reader::parse_attribute_value() {
  if (eof() || (peek() != '"' && peek() != '\'')) {
    throw ParseError("expected a quoted attribute value", pos_);
  }
  char quote = input_[pos_++];
  std::size_t begin = pos_;
  auto end = input_.find(quote, pos_);
  if (end == std::string_view::npos) {
    throw ParseError("unterminated attribute value", begin);
  }
  pos_ = end + 1;
  return decode_entities(input_.substr(begin, end - begin), begin);
}

void Reader::parse_start_tag() {
  std::size_t tag_offset = pos_;
  ++pos_;  // '<'
  start_ = StartTag{};
  start_.name = parse_name();
  for (;;) {
    while (!eof() && is_space(peek())) ++pos_;
    if (eof()) {
      throw ParseError("unterminated start tag <" + start_.name, tag_offset);
    }
    if (peek() == '>') {
      ++pos_;
      return;
    }
    if (peek() == '/' && peek(1) == '>') {
      pos_ += 2;
      start_.self_closing = true;
      return;
    }
    Attribute attr;
    attr.name = parse_name();
    while (!eof() && is_space(peek())) ++pos_;
    if (peek() != '=') {
      throw ParseError("expected '=' after attribute " + attr.name, pos_);
    }
    ++pos_;
    while (!eof() && is_space(peek())) ++pos_;
    attr.value = parse_attribute_value();
    start_.attributes.push_back(std::move(attr));
  }
}

void Reader::parse_end_tag() {
  std::size_t tag_offset = pos_;
  pos_ += 2;  // '</'
  end_name_ = parse_name();
  while (!eof() && is_space(peek())) ++pos_;
  if (eof() || peek() != '>') {
    throw ParseError("malformed end tag </" + end_name_, tag_offset);
  }
  ++pos_;
  if (open_elements_.empty()) {
    throw ParseError("unexpected end tag </" + end_name_ + ">", tag_offset);
  }
  if (open_elements_.back() != end_name_) {
    throw ParseError("mismatched end tag </" + end_name_ + ">, expected </" +
                         open_elements_.back() + ">",
                     tag_offset);
  }
  open_elements_.pop_back();
}

Reader::Event Reader::next() {
  if (pending_self_close_) {
    pending_self_close_ = false;
    end_name_ = open_elements_.back();
    open_elements_.pop_back();
    return Event::kEndElement;
  }

  skip_misc();

  if (eof()) {
    if (!open_elements_.empty()) {
      throw ParseError("unexpected end of input inside element <" +
                           open_elements_.back() + ">",
                       pos_);
    }
    return Event::kEnd;
  }

  if (peek() == '<') {
    if (starts_with("<![CDATA[")) {
      std::size_t begin = pos_ + 9;
      auto end = input_.find("]]>", begin);
      if (end == std::string_view::npos) {
        throw ParseError("unterminated CDATA section", pos_);
      }
      text_ = std::string(input_.substr(begin, end - begin));
      pos_ = end + 3;
      return Event::kText;
    }
    if (peek(1) == '/') {
      parse_end_tag();
      return Event::kEndElement;
    }
    if (peek(1) == '!' || peek(1) == '?') {
      // skip_misc handles these; reaching here means it is malformed.
      throw ParseError("malformed markup declaration", pos_);
    }
    parse_start_tag();
    open_elements_.push_back(start_.name);
    if (start_.self_closing) {
      pending_self_close_ = true;
    }
    return Event::kStartElement;
  }

  std::size_t begin = pos_;
  auto lt = input_.find('<', pos_);
  std::size_t end = lt == std::string_view::npos ? input_.size() : lt;
  text_ = decode_entities(input_.substr(begin, end - begin), begin);
  pos_ = end;
  if (open_elements_.empty()) {
    // Whitespace between top-level constructs is legal; anything else is not.
    for (char c : text_) {
      if (!is_space(c)) {
        throw ParseError("character data outside the root element", begin);
      }
    }
    return next();
  }
  return Event::kText;
}

}  // namespace hpd::xml
