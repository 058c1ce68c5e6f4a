#include "rstparse/treebank/dis_reader.hpp"

#include <cctype>
#include <optional>

#include "rstparse/errors.hpp"

namespace rstparse::treebank {

namespace {

struct Token {
  enum Kind { LParen, RParen, Atom, Text, End } kind = End;
  std::string value;
  int line = 1;
  int col = 1;
  size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& input) : in_(input) {}

  Token next() {
    skip_ws();
    Token tok;
    tok.line = line_;
    tok.col = col_;
    tok.offset = pos_;
    if (pos_ >= in_.size()) {
      tok.kind = Token::End;
      return tok;
    }
    char c = in_[pos_];
    if (c == '(') {
      advance();
      tok.kind = Token::LParen;
      return tok;
    }
    if (c == ')') {
      advance();
      tok.kind = Token::RParen;
      return tok;
    }
    if (c == '_' && pos_ + 1 < in_.size() && in_[pos_ + 1] == '!') {
      advance();
      advance();
      // Raw EDU text terminated by the next "_!"; may span lines and
      // contain parentheses.
      std::string text;
      while (true) {
        if (pos_ >= in_.size())
          throw ParseError("unterminated EDU text (expected closing _!) at offset " +
                               std::to_string(pos_),
                           line_, col_);
        if (in_[pos_] == '_' && pos_ + 1 < in_.size() && in_[pos_ + 1] == '!') {
          advance();
          advance();
          break;
        }
        text.push_back(in_[pos_]);
        advance();
      }
      tok.kind = Token::Text;
      tok.value = std::move(text);
      return tok;
    }
    std::string atom;
    while (pos_ < in_.size() && !std::isspace(static_cast<unsigned char>(in_[pos_])) &&
           in_[pos_] != '(' && in_[pos_] != ')') {
      atom.push_back(in_[pos_]);
      advance();
    }
    tok.kind = Token::Atom;
    tok.value = std::move(atom);
    return tok;
  }

 private:
  void skip_ws() {
    while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) advance();
  }
  void advance() {
    if (in_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& in_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool role_from_tag(const std::string& tag, RawRole& role) {
  if (tag == "Root") {
    role = RawRole::Root;
    return true;
  }
  if (tag == "Nucleus") {
    role = RawRole::Nucleus;
    return true;
  }
  if (tag == "Satellite") {
    role = RawRole::Satellite;
    return true;
  }
  return false;
}

class DisParser {
 public:
  explicit DisParser(const std::string& input) : lex_(input) { shift(); }

  RawNode parse_root() {
    RawNode node = parse_node();
    if (cur_.kind != Token::End)
      throw ParseError("trailing content after tree", cur_.line, cur_.col);
    return node;
  }

 private:
  void shift() { cur_ = lex_.next(); }

  void expect(Token::Kind kind, const char* what) {
    if (cur_.kind != kind) {
      if (cur_.kind == Token::End)
        throw ParseError(std::string("unexpected end of input, expected ") + what +
                             " at offset " + std::to_string(cur_.offset),
                         cur_.line, cur_.col);
      throw ParseError(std::string("expected ") + what, cur_.line, cur_.col);
    }
    shift();
  }

  int parse_int(const char* what) {
    if (cur_.kind != Token::Atom)
      throw ParseError(std::string("expected integer for ") + what, cur_.line, cur_.col);
    try {
      int v = std::stoi(cur_.value);
      shift();
      return v;
    } catch (const std::exception&) {
      throw ParseError(std::string("bad integer '") + cur_.value + "' for " + what, cur_.line,
                       cur_.col);
    }
  }

  RawNode parse_node() {
    int open_line = cur_.line, open_col = cur_.col;
    expect(Token::LParen, "'('");
    if (cur_.kind != Token::Atom)
      throw ParseError("expected node tag", cur_.line, cur_.col);
    RawRole role;
    if (!role_from_tag(cur_.value, role))
      throw ParseError("unknown node tag '" + cur_.value + "'", cur_.line, cur_.col);
    shift();
    return parse_node_body(role, open_line, open_col);
  }

  // The '(' and the tag atom have been consumed.
  RawNode parse_node_body(RawRole role, int open_line, int open_col) {
    RawNode node;
    node.role = role;
    bool is_leaf = false;
    std::optional<std::string> rel;

    while (cur_.kind == Token::LParen) {
      Token open = cur_;
      shift();
      if (cur_.kind != Token::Atom)
        throw ParseError("expected field name or node tag", cur_.line, cur_.col);
      const std::string head = cur_.value;
      RawRole child_role;
      if (head == "span") {
        shift();
        parse_int("span start");
        parse_int("span end");
        expect(Token::RParen, "')'");
      } else if (head == "leaf") {
        shift();
        node.leaf_index = parse_int("leaf index");
        is_leaf = true;
        expect(Token::RParen, "')'");
      } else if (head == "rel2par") {
        shift();
        if (cur_.kind != Token::Atom)
          throw ParseError("expected relation name after rel2par", cur_.line, cur_.col);
        rel = cur_.value;
        shift();
        expect(Token::RParen, "')'");
      } else if (head == "text") {
        shift();
        if (cur_.kind != Token::Text)
          throw ParseError("expected _!...!_ text", cur_.line, cur_.col);
        node.text = cur_.value;
        shift();
        expect(Token::RParen, "')'");
      } else if (role_from_tag(head, child_role)) {
        shift();
        node.children.push_back(parse_node_body(child_role, open.line, open.col));
      } else {
        throw ParseError("unknown node tag '" + head + "'", cur_.line, cur_.col);
      }
    }
    expect(Token::RParen, "')'");

    if (rel) node.relation = *rel;
    if (role == RawRole::Satellite && !rel)
      throw ParseError("missing relation on a Satellite", open_line, open_col);
    if (is_leaf && !node.children.empty())
      throw ParseError("leaf node cannot have children", open_line, open_col);
    if (!is_leaf && node.children.empty())
      throw ParseError("non-leaf node without children or leaf field", open_line, open_col);
    return node;
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

RawTree parse_dis(const std::string& text) {
  DisParser parser(text);
  RawTree tree;
  tree.has_root = true;
  tree.root = parser.parse_root();
  return tree;
}

}  // namespace rstparse::treebank
