#pragma once

#include <iosfwd>
#include <string>

#include "rstparse/types.hpp"

namespace rstparse::treebank {

// Canonical corpus format: one JSON object per line with fields
// doc_id, lang, edus (array of strings) and tree (nested objects,
// leaf {"edu": i} / node {"nuc","rel","left","right"}). This is the
// on-disk contract between all pipeline stages.

std::string doc_to_json(const AnnotatedDoc& doc);
AnnotatedDoc doc_from_json(const std::string& line);

void write_corpus_jsonl(const Corpus& corpus, const std::string& path);
Corpus read_corpus_jsonl(const std::string& path);

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out);
Corpus read_corpus_jsonl(std::istream& in, const std::string& origin = "<stream>");

}  // namespace rstparse::treebank
