#pragma once

#include <string>
#include <vector>

namespace rstparse::treebank {

// Child role in the source annotation.
enum class RawRole { Root, Nucleus, Satellite };

// N-ary tree as read from disk. `relation` is the annotation the node carries
// relative to its parent (rel2par in .dis, relname in .rs3); leaves keep the
// source EDU numbering in `leaf_index`.
struct RawNode {
  RawRole role = RawRole::Root;
  std::string relation;
  int leaf_index = 0;
  std::string text;
  std::vector<RawNode> children;

  bool is_leaf() const { return children.empty(); }
  int leaf_count() const;
};

// `floating` holds units that are not linked to the root (possible in .rs3
// exports); has_root is false when no unambiguous root component exists.
struct RawTree {
  bool has_root = false;
  RawNode root;
  std::vector<RawNode> floating;
};

}  // namespace rstparse::treebank
