#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rstparse/types.hpp"

namespace rstparse::oracle {

// One top-down span-splitting decision: span (i, j) of EDU indices
// (1-based, inclusive, i < j) split after EDU k (i <= k < j), labeled
// with the joint label of the node that produced the split.
struct SplitStep {
  int lo = 0;
  int hi = 0;
  int split = 0;
  Nuclearity nuc = Nuclearity::NN;
  std::string relation;
};

// The decoder's supervision signal: the m-1 splits of a binary tree in
// stack order (depth-first, left sub-span processed next).
struct SplitTrace {
  std::string doc_id;
  std::vector<SplitStep> steps;

  int step_count() const { return static_cast<int>(steps.size()); }
};

// Converts a binary tree to its split trace. A tree with m leaves yields
// exactly m-1 steps.
SplitTrace tree_to_trace(const RstTree& tree, const std::string& doc_id = "");

// Exact inverse of tree_to_trace. When labels_included is false the step
// labels are ignored and nodes carry NN with an empty relation. Throws
// TraceError on inconsistent spans, identifying the offending step.
std::unique_ptr<RstTree> trace_to_tree(const SplitTrace& trace, bool labels_included = true);

// Debug dump, one step per line: "i j k REL-NUC".
std::string trace_to_text(const SplitTrace& trace);
SplitTrace trace_from_text(const std::string& text, const std::string& doc_id = "");

}  // namespace rstparse::oracle
