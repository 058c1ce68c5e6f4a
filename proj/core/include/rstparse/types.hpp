#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rstparse/errors.hpp"

namespace rstparse {

// Nuclearity of a binary split: which side carries the nucleus.
enum class Nuclearity { NS, SN, NN };

const char* to_string(Nuclearity nuc);
Nuclearity nuclearity_from_string(std::string_view s);

// Half-open token interval [begin, end) into Document::tokens.
struct TokenSpan {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
};

struct Edu {
  int index = 0;  // 1-based position in the document
  std::string text;
  TokenSpan tokens;
};

struct Document {
  std::string doc_id;
  std::string lang;  // ISO 639-1
  std::vector<std::string> tokens;
  std::vector<Edu> edus;
  std::string source_treebank;
  std::string tokenizer = "whitespace";

  int edu_count() const { return static_cast<int>(edus.size()); }
  int token_count() const { return static_cast<int>(tokens.size()); }

  // Throws ContractError if EDUs do not tile the token sequence in order.
  void validate() const;
};

// Binary discourse tree. Leaves reference EDU indices (1-based); internal
// nodes carry nuclearity and a relation label (raw before harmonization,
// coarse afterwards). Spans are EDU intervals, 1-based inclusive.
struct RstTree {
  int edu = 0;                           // leaf payload
  Nuclearity nuc = Nuclearity::NN;      // internal payload
  std::string relation;                  // internal payload
  std::unique_ptr<RstTree> left, right;
  int span_lo = 0, span_hi = 0;

  bool is_leaf() const { return left == nullptr; }

  static std::unique_ptr<RstTree> make_leaf(int edu_index);
  static std::unique_ptr<RstTree> make_node(std::unique_ptr<RstTree> l,
                                            std::unique_ptr<RstTree> r,
                                            Nuclearity nuc, std::string relation);
  std::unique_ptr<RstTree> clone() const;

  int leaf_count() const { return span_hi - span_lo + 1; }
  // "<Relation>-<Nuc>", e.g. "Elaboration-NS". Internal nodes only.
  std::string joint_label() const;
};

bool tree_equal(const RstTree& a, const RstTree& b);
int internal_node_count(const RstTree& t);

// Throws ContractError unless leaves enumerate 1..m left to right and every
// node's span is the union of its children's adjacent spans.
void validate_tree(const RstTree& t);

// A document paired with its gold or predicted discourse tree.
struct AnnotatedDoc {
  Document doc;
  std::unique_ptr<RstTree> tree;

  AnnotatedDoc() = default;
  AnnotatedDoc(Document d, std::unique_ptr<RstTree> t) : doc(std::move(d)), tree(std::move(t)) {}
  AnnotatedDoc(AnnotatedDoc&&) = default;
  AnnotatedDoc& operator=(AnnotatedDoc&&) = default;

  AnnotatedDoc copy() const { return {doc, tree ? tree->clone() : nullptr}; }
};

using Corpus = std::vector<AnnotatedDoc>;

Corpus copy_corpus(const Corpus& corpus);

}  // namespace rstparse
