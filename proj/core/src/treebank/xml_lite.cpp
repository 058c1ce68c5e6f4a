#include "rstparse/treebank/xml_lite.hpp"

#include <cctype>

#include "rstparse/errors.hpp"

namespace rstparse::treebank {

const XmlElement* XmlElement::find(const std::string& child_name) const {
  for (const auto& c : children)
    if (c.name == child_name) return &c;
  return nullptr;
}

std::vector<const XmlElement*> XmlElement::find_all(const std::string& child_name) const {
  std::vector<const XmlElement*> out;
  for (const auto& c : children)
    if (c.name == child_name) out.push_back(&c);
  return out;
}

std::string XmlElement::attr(const std::string& key) const {
  auto it = attrs.find(key);
  if (it == attrs.end())
    throw ParseError("element <" + name + "> missing attribute '" + key + "'", line);
  return it->second;
}

namespace {

class XmlParser {
 public:
  explicit XmlParser(const std::string& input) : in_(input) {}

  XmlElement parse() {
    skip_misc();
    XmlElement root = parse_element();
    skip_misc();
    if (pos_ < in_.size()) throw ParseError("trailing content after root element", line_);
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) advance();
  }

  // Whitespace, <?...?> declarations and <!-- comments --> between elements.
  void skip_misc() {
    while (true) {
      skip_ws();
      if (starts_with("<?")) {
        while (pos_ < in_.size() && !starts_with("?>")) advance();
        if (pos_ >= in_.size()) throw ParseError("unterminated XML declaration", line_);
        advance();
        advance();
      } else if (starts_with("<!--")) {
        while (pos_ < in_.size() && !starts_with("-->")) advance();
        if (pos_ >= in_.size()) throw ParseError("unterminated comment", line_);
        advance();
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  bool starts_with(const char* s) const {
    size_t n = std::char_traits<char>::length(s);
    return in_.compare(pos_, n, s) == 0;
  }

  void advance() {
    if (in_[pos_] == '\n') ++line_;
    ++pos_;
  }

  char cur() const {
    if (pos_ >= in_.size()) throw ParseError("unexpected end of XML input", line_);
    return in_[pos_];
  }

  std::string parse_name() {
    std::string name;
    while (pos_ < in_.size()) {
      char c = in_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
          c == ':') {
        name.push_back(c);
        advance();
      } else {
        break;
      }
    }
    if (name.empty()) throw ParseError("expected XML name", line_);
    return name;
  }

  std::string decode_entities(const std::string& s) const {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '&') {
        out.push_back(s[i]);
        continue;
      }
      size_t semi = s.find(';', i);
      if (semi == std::string::npos) throw ParseError("unterminated entity reference", line_);
      std::string ent = s.substr(i + 1, semi - i - 1);
      if (ent == "amp")
        out.push_back('&');
      else if (ent == "lt")
        out.push_back('<');
      else if (ent == "gt")
        out.push_back('>');
      else if (ent == "quot")
        out.push_back('"');
      else if (ent == "apos")
        out.push_back('\'');
      else if (!ent.empty() && ent[0] == '#') {
        int code = std::stoi(ent.substr(ent[1] == 'x' || ent[1] == 'X' ? 2 : 1), nullptr,
                             ent[1] == 'x' || ent[1] == 'X' ? 16 : 10);
        // Keep it byte-oriented; multi-byte code points are passed through UTF-8.
        if (code < 0x80) {
          out.push_back(static_cast<char>(code));
        } else if (code < 0x800) {
          out.push_back(static_cast<char>(0xC0 | (code >> 6)));
          out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        } else {
          out.push_back(static_cast<char>(0xE0 | (code >> 12)));
          out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
          out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
        }
      } else {
        throw ParseError("unknown entity &" + ent + ";", line_);
      }
      i = semi;
    }
    return out;
  }

  XmlElement parse_element() {
    if (cur() != '<') throw ParseError("expected '<'", line_);
    advance();
    XmlElement el;
    el.line = line_;
    el.name = parse_name();
    while (true) {
      skip_ws();
      char c = cur();
      if (c == '/') {
        advance();
        if (cur() != '>') throw ParseError("expected '>' after '/'", line_);
        advance();
        return el;  // self-closing
      }
      if (c == '>') {
        advance();
        break;
      }
      std::string key = parse_name();
      skip_ws();
      if (cur() != '=') throw ParseError("expected '=' in attribute", line_);
      advance();
      skip_ws();
      char quote = cur();
      if (quote != '"' && quote != '\'') throw ParseError("expected quoted attribute value", line_);
      advance();
      std::string value;
      while (cur() != quote) {
        value.push_back(cur());
        advance();
      }
      advance();
      if (!el.attrs.emplace(key, decode_entities(value)).second)
        throw ParseError("duplicate attribute '" + key + "' on <" + el.name + ">", line_);
    }

    // Content: text and child elements until the matching close tag.
    while (true) {
      if (pos_ >= in_.size())
        throw ParseError("unexpected end of input inside <" + el.name + ">", line_);
      if (starts_with("<!--")) {
        while (pos_ < in_.size() && !starts_with("-->")) advance();
        if (pos_ >= in_.size()) throw ParseError("unterminated comment", line_);
        advance();
        advance();
        advance();
        continue;
      }
      if (starts_with("</")) {
        advance();
        advance();
        std::string close = parse_name();
        if (close != el.name)
          throw ParseError("mismatched close tag </" + close + "> for <" + el.name + ">", line_);
        skip_ws();
        if (cur() != '>') throw ParseError("expected '>' in close tag", line_);
        advance();
        return el;
      }
      if (cur() == '<') {
        el.children.push_back(parse_element());
        continue;
      }
      std::string text;
      while (pos_ < in_.size() && in_[pos_] != '<') {
        text.push_back(in_[pos_]);
        advance();
      }
      el.text += decode_entities(text);
    }
  }

  const std::string& in_;
  size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

XmlElement parse_xml(const std::string& input) { return XmlParser(input).parse(); }

}  // namespace rstparse::treebank
