#include "rstparse/treebank/tokenize.hpp"

#include <cctype>

namespace rstparse::treebank {

std::vector<std::string> whitespace_tokenize(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

void retokenize(Document& doc, const std::string& policy) {
  if (policy != "whitespace")
    throw ConfigError("unknown tokenizer policy: " + policy);
  doc.tokens.clear();
  for (auto& edu : doc.edus) {
    auto toks = whitespace_tokenize(edu.text);
    if (toks.empty()) toks.push_back("<empty>");
    edu.tokens.begin = static_cast<int>(doc.tokens.size());
    for (auto& t : toks) doc.tokens.push_back(std::move(t));
    edu.tokens.end = static_cast<int>(doc.tokens.size());
  }
  doc.tokenizer = policy;
}

}  // namespace rstparse::treebank
