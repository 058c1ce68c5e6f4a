#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rstparse/types.hpp"

namespace rstparse::treebank {

// Whitespace tokenization; the default policy when no backbone tokenizer
// is attached. Policy name: "whitespace".
std::vector<std::string> whitespace_tokenize(std::string_view text);

// Fills doc.tokens and the per-EDU token spans from the EDU texts using the
// named tokenizer policy. An EDU whose text yields no tokens contributes a
// single synthetic "<empty>" token so spans stay non-empty.
void retokenize(Document& doc, const std::string& policy = "whitespace");

}  // namespace rstparse::treebank
