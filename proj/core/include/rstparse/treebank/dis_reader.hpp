#pragma once

#include <string>

#include "rstparse/treebank/raw_tree.hpp"

namespace rstparse::treebank {

// Reads the parenthesized constituent format of the English RST-DT
// (.dis files). Node tags are Root/Nucleus/Satellite; fields are
// (span i j) | (leaf i), (rel2par name) and (text _!...!_).
// Throws ParseError with line/column on malformed input.
RawTree parse_dis(const std::string& text);

}  // namespace rstparse::treebank
