#include "rstparse/eval/mfs.hpp"

#include <map>

#include "rstparse/errors.hpp"

namespace rstparse::eval {

namespace {

void tally(const RstTree& t, std::map<std::string, long>& counts,
           std::map<std::string, std::pair<std::string, Nuclearity>>& labels) {
  if (t.is_leaf()) return;
  std::string key = t.joint_label();
  ++counts[key];
  labels.emplace(key, std::make_pair(t.relation, t.nuc));
  tally(*t.left, counts, labels);
  tally(*t.right, counts, labels);
}

}  // namespace

std::pair<std::string, Nuclearity> most_frequent_joint_label(const Corpus& train) {
  if (train.empty()) throw ContractError("MFS baseline needs a non-empty training corpus");
  std::map<std::string, long> counts;
  std::map<std::string, std::pair<std::string, Nuclearity>> labels;
  for (const auto& doc : train)
    if (doc.tree) tally(*doc.tree, counts, labels);
  if (counts.empty())
    throw ContractError("training corpus has no internal nodes to count labels from");
  // std::map iterates keys in lexicographic order, so the first maximal
  // entry is the lexicographic tie-winner.
  const std::string* best = nullptr;
  long best_count = -1;
  for (const auto& [key, count] : counts) {
    if (count > best_count) {
      best = &key;
      best_count = count;
    }
  }
  return labels.at(*best);
}

namespace {

std::unique_ptr<RstTree> right_branching(int lo, int hi, const std::string& rel,
                                         Nuclearity nuc) {
  if (lo == hi) return RstTree::make_leaf(lo);
  return RstTree::make_node(RstTree::make_leaf(lo), right_branching(lo + 1, hi, rel, nuc), nuc,
                            rel);
}

}  // namespace

std::unique_ptr<RstTree> mfs_baseline(const Corpus& train, const Document& doc) {
  auto [rel, nuc] = most_frequent_joint_label(train);
  return right_branching(1, doc.edu_count(), rel, nuc);
}

}  // namespace rstparse::eval
