#pragma once

#include <string>
#include <vector>

#include "rstparse/translation/cache.hpp"
#include "rstparse/translation/client.hpp"
#include "rstparse/types.hpp"

namespace rstparse::translation {

// EDU segment-level translation: every EDU is translated independently so
// segmentation, order and the tree annotations survive the language change.
// The returned document keeps the original tree (structure and labels),
// gets re-tokenized token spans and lang = target_lang.
// Throws SegmentationError when the client changes the segment count or
// returns an empty EDU.
AnnotatedDoc translate_document(const AnnotatedDoc& doc, const std::string& target_lang,
                                TranslationClient& client, TranslationCache& cache);

struct TranslateFailure {
  std::string doc_id;
  std::string error;
};

struct TranslateResult {
  Corpus corpus;  // successes, original order
  std::vector<TranslateFailure> failures;
};

// Translates a corpus with up to `parallelism` concurrent document
// requests; the cache is consulted first and per-document failures are
// collected rather than fatal.
TranslateResult translate_corpus(const Corpus& corpus, const std::string& target_lang,
                                 TranslationClient& client, TranslationCache& cache,
                                 int parallelism = 1);

}  // namespace rstparse::translation
