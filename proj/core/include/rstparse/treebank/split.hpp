#pragma once

#include <cstdint>

#include "rstparse/types.hpp"

namespace rstparse::treebank {

struct TrainTestSplit {
  Corpus train;
  Corpus test;
};

// Per-language random split with exactly `test_per_lang` test documents per
// language (38 by default). Deterministic for a fixed seed. Throws
// SplitError when a language has too few samples to leave a non-empty
// training set.
TrainTestSplit split_dataset(const Corpus& corpus, std::uint64_t seed, int test_per_lang = 38);

}  // namespace rstparse::treebank
