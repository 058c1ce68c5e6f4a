#pragma once

// Shared test helpers: random tree/document generators, synthetic corpora,
// and finite-difference gradient checking. Everything is seeded and
// deterministic.

#include <memory>
#include <string>
#include <vector>

#include "rstparse/model/parser_model.hpp"
#include "rstparse/oracle/trace.hpp"
#include "rstparse/treebank/raw_tree.hpp"
#include "rstparse/treebank/tokenize.hpp"
#include "rstparse/types.hpp"
#include "rstparse/util/rng.hpp"

namespace testsup {

using namespace rstparse;

inline const std::vector<std::string>& sample_relations() {
  static const std::vector<std::string> kRels = {"Elaboration", "Contrast", "Joint",
                                                 "Attribution", "Background", "Cause"};
  return kRels;
}

inline Nuclearity random_nuc(Rng& rng) {
  switch (rng.index(3)) {
    case 0: return Nuclearity::NS;
    case 1: return Nuclearity::SN;
    default: return Nuclearity::NN;
  }
}

inline std::string random_rel(Rng& rng) {
  return sample_relations()[rng.index(sample_relations().size())];
}

// Uniformly random binary tree over EDUs [lo, hi] with random labels.
inline std::unique_ptr<RstTree> random_tree_span(Rng& rng, int lo, int hi) {
  if (lo == hi) return RstTree::make_leaf(lo);
  int k = lo + static_cast<int>(rng.index(static_cast<size_t>(hi - lo)));
  return RstTree::make_node(random_tree_span(rng, lo, k), random_tree_span(rng, k + 1, hi),
                            random_nuc(rng), random_rel(rng));
}

inline std::unique_ptr<RstTree> random_binary_tree(Rng& rng, int m) {
  return random_tree_span(rng, 1, m);
}

// Random n-ary RawTree with realistic role patterns: multinuclear nodes
// (all Nucleus) or one nucleus with satellites around it. Returns the node
// count statistic needed by the binarization invariant.
struct RawGen {
  treebank::RawNode node;
  int leaves = 0;
  int sum_k_minus_1 = 0;
};

inline RawGen random_raw_node(Rng& rng, int depth, int& next_leaf) {
  RawGen out;
  if (depth >= 4 || (depth > 0 && rng.real() < 0.4)) {
    out.node.role = treebank::RawRole::Nucleus;
    out.node.leaf_index = ++next_leaf;
    out.node.text = "edu " + std::to_string(next_leaf);
    out.leaves = 1;
    return out;
  }
  int k = 2 + static_cast<int>(rng.index(4));  // 2..5 children
  bool multinuc = rng.real() < 0.5 || k > 2;
  std::vector<treebank::RawRole> roles(static_cast<size_t>(k), treebank::RawRole::Nucleus);
  std::string rel = random_rel(rng);
  if (!multinuc) {
    // binary mono-nuclear pair
    if (rng.real() < 0.5)
      roles[1] = treebank::RawRole::Satellite;
    else
      roles[0] = treebank::RawRole::Satellite;
  } else if (k > 2 && rng.real() < 0.3) {
    // one nucleus, satellites around it
    size_t nucleus = rng.index(static_cast<size_t>(k));
    for (size_t i = 0; i < roles.size(); ++i)
      if (i != nucleus) roles[i] = treebank::RawRole::Satellite;
  }
  out.node.role = treebank::RawRole::Nucleus;
  for (int c = 0; c < k; ++c) {
    RawGen child = random_raw_node(rng, depth + 1, next_leaf);
    child.node.role = roles[static_cast<size_t>(c)];
    child.node.relation = rel;
    out.leaves += child.leaves;
    out.sum_k_minus_1 += child.sum_k_minus_1;
    out.node.children.push_back(std::move(child.node));
  }
  out.sum_k_minus_1 += k - 1;
  return out;
}

inline RawGen random_raw_tree(Rng& rng) {
  int next_leaf = 0;
  RawGen gen = random_raw_node(rng, 0, next_leaf);
  while (gen.leaves < 2) {  // ensure a real tree, not a bare leaf
    next_leaf = 0;
    gen = random_raw_node(rng, 0, next_leaf);
  }
  gen.node.role = treebank::RawRole::Root;
  return gen;
}

inline const std::vector<std::string>& sample_vocab() {
  static const std::vector<std::string> kVocab = {
      "market", "shares", "rose",  "fell",   "bank",   "report", "quarter", "profit",
      "trees",  "forest", "river", "stone",  "light",  "sound",  "garden",  "window",
      "city",   "road",   "house", "people", "number", "value",  "study",   "model"};
  return kVocab;
}

// Document with m EDUs of 1..5 random tokens each.
inline Document random_document(Rng& rng, int m, const std::string& doc_id = "doc",
                                const std::string& lang = "en") {
  Document doc;
  doc.doc_id = doc_id;
  doc.lang = lang;
  doc.source_treebank = "test";
  for (int i = 1; i <= m; ++i) {
    Edu e;
    e.index = i;
    int len = 1 + static_cast<int>(rng.index(5));
    std::string text;
    for (int t = 0; t < len; ++t) {
      if (t) text += ' ';
      text += sample_vocab()[rng.index(sample_vocab().size())];
    }
    e.text = text;
    doc.edus.push_back(std::move(e));
  }
  treebank::retokenize(doc);
  return doc;
}

inline Corpus random_corpus(Rng& rng, int docs, int min_m, int max_m,
                            const std::string& lang = "en") {
  Corpus corpus;
  for (int d = 0; d < docs; ++d) {
    int m = min_m + static_cast<int>(rng.index(static_cast<size_t>(max_m - min_m + 1)));
    AnnotatedDoc ad;
    ad.doc = random_document(rng, m, lang + "-doc-" + std::to_string(d), lang);
    ad.tree = random_binary_tree(rng, m);
    corpus.push_back(std::move(ad));
  }
  return corpus;
}

// Small trainable model for gradient checks and overfit tests.
inline std::unique_ptr<model::ParserModel> toy_model(const Corpus& corpus,
                                                     const model::Hyperparams& hp,
                                                     std::uint64_t seed) {
  auto labels = model::JointLabelVocab::from_corpus(corpus);
  auto vocab = model::ToyBackbone::build_vocab(corpus);
  auto backbone = std::make_unique<model::ToyBackbone>(std::move(vocab), hp.d_emb);
  auto m = std::make_unique<model::ParserModel>(hp, std::move(labels), std::move(backbone));
  m->init_params(seed);
  return m;
}

// Central finite differences on every parameter tensor; returns the worst
// relative error max_t ||ga - gn|| / max(||ga|| + ||gn||, eps).
inline double gradient_check(model::ParserModel& model, const Document& doc,
                             const oracle::SplitTrace& gold, double h = 1e-5,
                             std::vector<std::pair<std::string, double>>* per_tensor = nullptr) {
  model::LossOptions opts;
  opts.training = false;
  opts.add_regularizer = true;

  model.zero_grad();
  model.compute_loss(doc, gold, opts);
  std::vector<Eigen::MatrixXd> analytic;
  for (model::Tensor* t : model.parameters()) analytic.push_back(t->grad);

  double worst = 0.0;
  auto params = model.parameters();
  for (size_t pi = 0; pi < params.size(); ++pi) {
    model::Tensor* t = params[pi];
    Eigen::MatrixXd numeric(t->value.rows(), t->value.cols());
    for (Eigen::Index c = 0; c < t->value.cols(); ++c) {
      for (Eigen::Index r = 0; r < t->value.rows(); ++r) {
        double saved = t->value(r, c);
        t->value(r, c) = saved + h;
        model.zero_grad();
        double up = model.compute_loss(doc, gold, opts).total;
        t->value(r, c) = saved - h;
        model.zero_grad();
        double down = model.compute_loss(doc, gold, opts).total;
        t->value(r, c) = saved;
        numeric(r, c) = (up - down) / (2.0 * h);
      }
    }
    double denom = std::max(analytic[pi].norm() + numeric.norm(), 1e-8);
    double err = (analytic[pi] - numeric).norm() / denom;
    if (per_tensor) per_tensor->push_back({t->name, err});
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace testsup
