#include "rstparse/treebank/preprocess.hpp"

#include <functional>

#include "rstparse/errors.hpp"

namespace rstparse::treebank {

int RawNode::leaf_count() const {
  if (is_leaf()) return 1;
  int n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

namespace {

void renumber_leaves(RawNode& node, int& next) {
  if (node.is_leaf()) {
    node.leaf_index = next++;
    return;
  }
  for (auto& c : node.children) renumber_leaves(c, next);
}

// The relation shared by the nuclei of a multinuclear node.
std::string multinuc_relation(const RawNode& node) {
  for (const auto& c : node.children) {
    if (c.role == RawRole::Nucleus && !c.relation.empty() && c.relation != "span")
      return c.relation;
  }
  return node.relation;
}

std::unique_ptr<RstTree> convert(const RawNode& node);

std::unique_ptr<RstTree> right_chain(const std::vector<const RawNode*>& nuclei, size_t from,
                                     const std::string& rel) {
  if (from + 1 == nuclei.size()) return convert(*nuclei[from]);
  return RstTree::make_node(convert(*nuclei[from]), right_chain(nuclei, from + 1, rel),
                            Nuclearity::NN, rel);
}

std::unique_ptr<RstTree> convert(const RawNode& node) {
  if (node.is_leaf()) return RstTree::make_leaf(node.leaf_index);
  if (node.children.size() == 1) return convert(node.children.front());

  const auto& kids = node.children;
  if (kids.size() == 2) {
    RawRole r0 = kids[0].role, r1 = kids[1].role;
    if (r0 == RawRole::Nucleus && r1 == RawRole::Satellite)
      return RstTree::make_node(convert(kids[0]), convert(kids[1]), Nuclearity::NS,
                                kids[1].relation);
    if (r0 == RawRole::Satellite && r1 == RawRole::Nucleus)
      return RstTree::make_node(convert(kids[0]), convert(kids[1]), Nuclearity::SN,
                                kids[0].relation);
    if (r0 == RawRole::Nucleus && r1 == RawRole::Nucleus)
      return RstTree::make_node(convert(kids[0]), convert(kids[1]), Nuclearity::NN,
                                multinuc_relation(node));
    throw ContractError("binary node with two satellite children");
  }

  // N-ary: nuclei form a right-branching multinuclear core (satellites that
  // sit between nuclei are coerced to nuclei); outer satellites fold around
  // the core, nearest first.
  size_t first_n = kids.size(), last_n = 0;
  for (size_t i = 0; i < kids.size(); ++i) {
    if (kids[i].role == RawRole::Nucleus) {
      first_n = std::min(first_n, i);
      last_n = std::max(last_n, i);
    }
  }
  if (first_n == kids.size()) throw ContractError("n-ary node without a nucleus child");

  std::string rel = multinuc_relation(node);
  std::vector<const RawNode*> core_kids;
  for (size_t i = first_n; i <= last_n; ++i) core_kids.push_back(&kids[i]);
  std::unique_ptr<RstTree> core = right_chain(core_kids, 0, rel);

  // Remaining satellites: indices < first_n on the left, > last_n on the right.
  size_t li = first_n, ri = last_n + 1;
  while (li > 0 || ri < kids.size()) {
    size_t left_dist = li > 0 ? first_n - (li - 1) : SIZE_MAX;
    size_t right_dist = ri < kids.size() ? ri - last_n : SIZE_MAX;
    if (left_dist <= right_dist) {
      const RawNode& sat = kids[--li];
      core = RstTree::make_node(convert(sat), std::move(core), Nuclearity::SN, sat.relation);
    } else {
      const RawNode& sat = kids[ri++];
      core = RstTree::make_node(std::move(core), convert(sat), Nuclearity::NS, sat.relation);
    }
  }
  return core;
}

}  // namespace

RawTree remove_unlinked(const RawTree& raw) {
  if (!raw.has_root) throw EmptyTreeError("no linked units remain");
  RawTree out;
  out.has_root = true;
  out.root = raw.root;
  int next = 1;
  renumber_leaves(out.root, next);
  return out;
}

std::unique_ptr<RstTree> binarize(const RawTree& raw) {
  if (!raw.has_root) throw EmptyTreeError("cannot binarize a tree without a root");
  if (!raw.floating.empty())
    throw ContractError("binarize expects a connected tree; run remove_unlinked first");
  return convert(raw.root);
}

namespace {

std::unique_ptr<RstTree> harmonize_node(const RstTree& t, const RelationMap& map,
                                        const std::string& treebank) {
  if (t.is_leaf()) return RstTree::make_leaf(t.edu);
  std::string rel =
      map.is_coarse(t.relation) ? t.relation : map.lookup(treebank, t.relation);
  return RstTree::make_node(harmonize_node(*t.left, map, treebank),
                            harmonize_node(*t.right, map, treebank), t.nuc, std::move(rel));
}

void collect_texts(const RawNode& node, std::vector<std::string>& out) {
  if (node.is_leaf()) {
    out.push_back(node.text);
    return;
  }
  for (const auto& c : node.children) collect_texts(c, out);
}

}  // namespace

std::unique_ptr<RstTree> harmonize(const RstTree& tree, const RelationMap& map,
                                   const std::string& treebank) {
  return harmonize_node(tree, map, treebank);
}

std::vector<std::string> collect_edu_texts(const RawTree& raw) {
  std::vector<std::string> out;
  if (raw.has_root) collect_texts(raw.root, out);
  return out;
}

}  // namespace rstparse::treebank
