#include "rstparse/oracle/trace.hpp"

#include <map>
#include <sstream>

#include "rstparse/errors.hpp"

namespace rstparse::oracle {

namespace {

void index_nodes(const RstTree& t, std::map<std::pair<int, int>, const RstTree*>& by_span) {
  if (t.is_leaf()) return;
  if (!t.left || !t.right) throw OracleError("non-binary node in tree");
  by_span[{t.span_lo, t.span_hi}] = &t;
  index_nodes(*t.left, by_span);
  index_nodes(*t.right, by_span);
}

}  // namespace

SplitTrace tree_to_trace(const RstTree& tree, const std::string& doc_id) {
  std::map<std::pair<int, int>, const RstTree*> by_span;
  index_nodes(tree, by_span);

  SplitTrace trace;
  trace.doc_id = doc_id;
  // Stack of pending spans; right sub-span pushed first so the left one is
  // popped (and therefore processed) next.
  std::vector<std::pair<int, int>> stack;
  if (tree.span_hi > tree.span_lo) stack.push_back({tree.span_lo, tree.span_hi});
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    auto it = by_span.find({lo, hi});
    if (it == by_span.end())
      throw OracleError("no node covers span (" + std::to_string(lo) + ", " +
                        std::to_string(hi) + ")");
    const RstTree* node = it->second;
    int k = node->left->span_hi;
    trace.steps.push_back({lo, hi, k, node->nuc, node->relation});
    if (hi > k + 1) stack.push_back({k + 1, hi});
    if (k > lo) stack.push_back({lo, k});
  }
  return trace;
}

namespace {

std::unique_ptr<RstTree> build_span(const SplitTrace& trace, size_t& next, int lo, int hi,
                                    bool labels) {
  if (lo == hi) return RstTree::make_leaf(lo);
  if (next >= trace.steps.size())
    throw TraceError("trace ended before span (" + std::to_string(lo) + ", " +
                     std::to_string(hi) + ") was split");
  const SplitStep& step = trace.steps[next];
  size_t at = next;
  ++next;
  if (step.lo != lo || step.hi != hi)
    throw TraceError("step " + std::to_string(at + 1) + " splits (" + std::to_string(step.lo) +
                     ", " + std::to_string(step.hi) + ") but (" + std::to_string(lo) + ", " +
                     std::to_string(hi) + ") was expected");
  if (step.split < lo || step.split >= hi)
    throw TraceError("step " + std::to_string(at + 1) + ": split position " +
                     std::to_string(step.split) + " outside [" + std::to_string(lo) + ", " +
                     std::to_string(hi - 1) + "]");
  auto left = build_span(trace, next, lo, step.split, labels);
  auto right = build_span(trace, next, step.split + 1, hi, labels);
  return RstTree::make_node(std::move(left), std::move(right),
                            labels ? step.nuc : Nuclearity::NN,
                            labels ? step.relation : std::string());
}

}  // namespace

std::unique_ptr<RstTree> trace_to_tree(const SplitTrace& trace, bool labels_included) {
  int m = trace.steps.empty() ? 1 : trace.steps.front().hi;
  if (!trace.steps.empty() && trace.steps.front().lo != 1)
    throw TraceError("step 1 must start at EDU 1");
  size_t next = 0;
  auto tree = build_span(trace, next, 1, m, labels_included);
  if (next != trace.steps.size())
    throw TraceError("trace has " + std::to_string(trace.steps.size() - next) +
                     " unused trailing steps");
  return tree;
}

std::string trace_to_text(const SplitTrace& trace) {
  std::ostringstream out;
  for (const auto& s : trace.steps)
    out << s.lo << ' ' << s.hi << ' ' << s.split << ' ' << s.relation << '-'
        << to_string(s.nuc) << '\n';
  return out.str();
}

SplitTrace trace_from_text(const std::string& text, const std::string& doc_id) {
  SplitTrace trace;
  trace.doc_id = doc_id;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    SplitStep step;
    std::string label;
    if (!(ss >> step.lo >> step.hi >> step.split >> label))
      throw ParseError("bad trace line", lineno);
    size_t dash = label.rfind('-');
    if (dash == std::string::npos) throw ParseError("trace label needs REL-NUC", lineno);
    step.relation = label.substr(0, dash);
    step.nuc = nuclearity_from_string(label.substr(dash + 1));
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

}  // namespace rstparse::oracle
