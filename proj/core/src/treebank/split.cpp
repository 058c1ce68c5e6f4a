#include "rstparse/treebank/split.hpp"

#include <map>
#include <vector>

#include "rstparse/util/rng.hpp"

namespace rstparse::treebank {

TrainTestSplit split_dataset(const Corpus& corpus, std::uint64_t seed, int test_per_lang) {
  if (test_per_lang <= 0) throw SplitError("test_per_lang must be positive");

  std::map<std::string, std::vector<size_t>> by_lang;
  for (size_t i = 0; i < corpus.size(); ++i) by_lang[corpus[i].doc.lang].push_back(i);

  std::vector<bool> is_test(corpus.size(), false);
  for (auto& [lang, indices] : by_lang) {
    if (static_cast<int>(indices.size()) <= test_per_lang)
      throw SplitError("language '" + lang + "' has " + std::to_string(indices.size()) +
                       " samples, need more than " + std::to_string(test_per_lang));
    Rng rng(seed ^ fnv1a_hash(lang));
    rng.shuffle(indices);
    for (int k = 0; k < test_per_lang; ++k) is_test[indices[static_cast<size_t>(k)]] = true;
  }

  TrainTestSplit out;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (is_test[i])
      out.test.push_back(corpus[i].copy());
    else
      out.train.push_back(corpus[i].copy());
  }
  return out;
}

}  // namespace rstparse::treebank
