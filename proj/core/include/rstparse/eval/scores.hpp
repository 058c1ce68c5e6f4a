#pragma once

#include <map>
#include <string>
#include <vector>

#include "rstparse/types.hpp"

namespace rstparse::eval {

// One internal node of a binary tree: EDU span plus its labels.
struct LabeledSpan {
  int lo = 0;
  int hi = 0;
  Nuclearity nuc = Nuclearity::NN;
  std::string relation;

  friend bool operator<(const LabeledSpan& a, const LabeledSpan& b) {
    return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
  }
};

// One entry per internal node; includes the root span, excludes leaves.
std::vector<LabeledSpan> extract_spans(const RstTree& tree);

struct F1Triple {
  double sp = 0.0;
  double nu = 0.0;
  double rel = 0.0;
};

struct ScoringOptions {
  bool include_root = true;     // drop the root span from both sides when false
  bool macro_per_class = false; // macro over relation classes instead of documents
};

struct TreePair {
  const RstTree* gold = nullptr;
  const RstTree* pred = nullptr;
};

// Pooled (micro) F1 over all pairs for span / nuclearity / relation
// agreement, in percent. Both trees of a pair must cover the same EDU
// count (EvalError otherwise).
F1Triple micro_scores(const std::vector<TreePair>& pairs, const ScoringOptions& opt = {});

// Per-document F1 averaged over documents (or per relation class with
// macro_per_class). A pair with no spans on either side counts as 100.
F1Triple macro_scores(const std::vector<TreePair>& pairs, const ScoringOptions& opt = {});

// Macro and micro triples for one document set, in percent.
struct ScoreBlock {
  F1Triple macro;
  F1Triple micro;
  int documents = 0;
};

// Pooled plus per-language scores, mirrored to JSON by the CLI.
struct ScoreReport {
  ScoreBlock pooled;
  std::map<std::string, ScoreBlock> per_language;
};

ScoreReport score_corpora(const Corpus& gold, const Corpus& pred, const ScoringOptions& opt = {});

std::string report_to_json(const ScoreReport& report);
std::string report_to_text(const ScoreReport& report);

}  // namespace rstparse::eval
