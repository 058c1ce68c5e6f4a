#pragma once

#include <set>
#include <string>
#include <vector>

#include "rstparse/types.hpp"

namespace rstparse::analysis {

struct PrepOptions {
  int min_corpus_frequency = 3;
  bool use_default_stopwords = true;
  std::set<std::string> extra_stopwords;
};

struct BagOfWords {
  std::vector<std::string> vocab;
  std::vector<std::vector<int>> docs;  // word ids per document, in order
  std::vector<std::string> doc_ids;
  std::vector<std::string> doc_labels;  // treebank labels, for coloring
};

const std::set<std::string>& default_stopwords();

// Lowercases, strips punctuation, drops stop words and rare words, and
// maps the remaining tokens to a contiguous vocabulary.
BagOfWords prepare_corpus(const Corpus& corpus, const PrepOptions& opt = {});

}  // namespace rstparse::analysis
