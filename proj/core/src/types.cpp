#include "rstparse/types.hpp"

namespace rstparse {

const char* to_string(Nuclearity nuc) {
  switch (nuc) {
    case Nuclearity::NS: return "NS";
    case Nuclearity::SN: return "SN";
    case Nuclearity::NN: return "NN";
  }
  return "NN";
}

Nuclearity nuclearity_from_string(std::string_view s) {
  if (s == "NS") return Nuclearity::NS;
  if (s == "SN") return Nuclearity::SN;
  if (s == "NN") return Nuclearity::NN;
  throw ContractError("unknown nuclearity label: " + std::string(s));
}

void Document::validate() const {
  if (edus.empty()) throw ContractError("document " + doc_id + " has no EDUs");
  int cursor = 0;
  for (size_t i = 0; i < edus.size(); ++i) {
    const Edu& e = edus[i];
    if (e.index != static_cast<int>(i) + 1)
      throw ContractError("document " + doc_id + ": EDU indices not contiguous");
    if (e.tokens.begin != cursor || e.tokens.end <= e.tokens.begin)
      throw ContractError("document " + doc_id + ": EDU token spans must tile the token sequence");
    cursor = e.tokens.end;
  }
  if (cursor != token_count())
    throw ContractError("document " + doc_id + ": EDUs do not cover all tokens");
}

std::unique_ptr<RstTree> RstTree::make_leaf(int edu_index) {
  auto t = std::make_unique<RstTree>();
  t->edu = edu_index;
  t->span_lo = t->span_hi = edu_index;
  return t;
}

std::unique_ptr<RstTree> RstTree::make_node(std::unique_ptr<RstTree> l,
                                            std::unique_ptr<RstTree> r,
                                            Nuclearity nuc, std::string relation) {
  auto t = std::make_unique<RstTree>();
  t->span_lo = l->span_lo;
  t->span_hi = r->span_hi;
  t->nuc = nuc;
  t->relation = std::move(relation);
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}

std::unique_ptr<RstTree> RstTree::clone() const {
  if (is_leaf()) return make_leaf(edu);
  return make_node(left->clone(), right->clone(), nuc, relation);
}

std::string RstTree::joint_label() const {
  return relation + "-" + to_string(nuc);
}

bool tree_equal(const RstTree& a, const RstTree& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.edu == b.edu;
  if (a.nuc != b.nuc || a.relation != b.relation) return false;
  return tree_equal(*a.left, *b.left) && tree_equal(*a.right, *b.right);
}

int internal_node_count(const RstTree& t) {
  if (t.is_leaf()) return 0;
  return 1 + internal_node_count(*t.left) + internal_node_count(*t.right);
}

namespace {

void check_leaves(const RstTree& t, int& next) {
  if (t.is_leaf()) {
    if (t.edu != next) throw ContractError("tree leaves are not 1..m in order");
    if (t.span_lo != t.edu || t.span_hi != t.edu) throw ContractError("leaf span mismatch");
    ++next;
    return;
  }
  if (!t.left || !t.right) throw ContractError("internal node must have two children");
  check_leaves(*t.left, next);
  check_leaves(*t.right, next);
  if (t.span_lo != t.left->span_lo || t.span_hi != t.right->span_hi ||
      t.left->span_hi + 1 != t.right->span_lo)
    throw ContractError("node span is not the union of adjacent child spans");
}

}  // namespace

void validate_tree(const RstTree& t) {
  int next = 1;
  check_leaves(t, next);
  if (t.span_lo != 1) throw ContractError("tree must start at EDU 1");
}

Corpus copy_corpus(const Corpus& corpus) {
  Corpus out;
  out.reserve(corpus.size());
  for (const auto& d : corpus) out.push_back(d.copy());
  return out;
}

}  // namespace rstparse
