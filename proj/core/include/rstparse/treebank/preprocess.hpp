#pragma once

#include <memory>

#include "rstparse/treebank/raw_tree.hpp"
#include "rstparse/treebank/relation_map.hpp"
#include "rstparse/types.hpp"

namespace rstparse::treebank {

// Drops units unreachable from the root and renumbers EDU indices 1..m in
// text order. Throws EmptyTreeError when no root component remains.
RawTree remove_unlinked(const RawTree& raw);

// Right-branching binarization. N-ary multinuclear nodes become chains of
// NS=NN nodes inheriting the multinuclear relation; mono-nuclear nodes fold
// their satellites around the nucleus, nearest first. Unary nodes collapse.
// Relations stay raw; nuclearity is derived from the child roles.
std::unique_ptr<RstTree> binarize(const RawTree& raw);

// Replaces raw relation labels with coarse classes via the map. Labels that
// are already coarse pass through unchanged.
std::unique_ptr<RstTree> harmonize(const RstTree& tree, const RelationMap& map,
                                   const std::string& treebank);

// Collects EDU texts of the (binarized) raw tree in leaf order.
std::vector<std::string> collect_edu_texts(const RawTree& raw);

}  // namespace rstparse::treebank
