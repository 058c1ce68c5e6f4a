#pragma once

#include <string>

#include "rstparse/treebank/raw_tree.hpp"

namespace rstparse::treebank {

// Reads the .rs3 XML format (segment/group elements with parent links).
// Satellites attach to the unit their parent link names (nearest first,
// orientation by text order); multinuclear groups become n-ary nodes.
// Parentless components other than the largest one are reported as
// floating units on the returned RawTree.
// Throws ParseError on duplicate ids, dangling parents and cycles.
RawTree parse_rs3(const std::string& xml);

}  // namespace rstparse::treebank
