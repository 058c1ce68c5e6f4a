#include "rstparse/analysis/text_prep.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "rstparse/errors.hpp"

namespace rstparse::analysis {

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> kStopwords = {
      "a",     "an",    "and",   "are",  "as",    "at",    "be",    "but",  "by",    "for",
      "from",  "had",   "has",   "have", "he",    "her",   "his",   "i",    "in",    "is",
      "it",    "its",   "not",   "of",   "on",    "or",    "s",     "she",  "that",  "the",
      "their", "them",  "there", "they", "this",  "to",    "was",   "we",   "were",  "which",
      "who",   "will",  "with",  "would", "you",  "said",  "also",  "been", "more",  "than",
      "when",  "while", "can",   "could", "do",   "does",  "did",   "if",   "into",  "no",
      "so",    "such",  "then",  "these", "those", "up",   "what",  "all",  "about", "one",
      // common function words of the non-English treebank languages
      "de",    "da",    "do",    "e",     "o",    "os",    "um",    "uma",  "que",   "não",
      "el",    "la",    "los",   "las",   "y",    "en",    "un",    "una",  "der",   "die",
      "das",   "und",   "ist",   "het",   "een",  "van",   "eta",   "du",   "le",    "les"};
  return kStopwords;
}

namespace {

std::vector<std::string> normalize_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char raw : text) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (std::isalnum(c) || c >= 0x80) {  // keep multi-byte characters intact
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

BagOfWords prepare_corpus(const Corpus& corpus, const PrepOptions& opt) {
  std::vector<std::vector<std::string>> tokenized;
  std::map<std::string, int> freq;
  for (const auto& d : corpus) {
    std::vector<std::string> words;
    for (const auto& edu : d.doc.edus) {
      auto toks = normalize_tokens(edu.text);
      words.insert(words.end(), toks.begin(), toks.end());
    }
    for (const auto& w : words) ++freq[w];
    tokenized.push_back(std::move(words));
  }

  auto is_stopword = [&](const std::string& w) {
    if (opt.extra_stopwords.count(w)) return true;
    return opt.use_default_stopwords && default_stopwords().count(w) > 0;
  };

  BagOfWords bow;
  std::map<std::string, int> word_id;
  for (size_t d = 0; d < tokenized.size(); ++d) {
    std::vector<int> ids;
    for (const auto& w : tokenized[d]) {
      if (is_stopword(w) || freq[w] < opt.min_corpus_frequency) continue;
      auto it = word_id.find(w);
      int id;
      if (it == word_id.end()) {
        id = static_cast<int>(bow.vocab.size());
        word_id[w] = id;
        bow.vocab.push_back(w);
      } else {
        id = it->second;
      }
      ids.push_back(id);
    }
    bow.docs.push_back(std::move(ids));
    bow.doc_ids.push_back(corpus[d].doc.doc_id);
    bow.doc_labels.push_back(corpus[d].doc.source_treebank.empty()
                                 ? corpus[d].doc.lang
                                 : corpus[d].doc.source_treebank);
  }
  if (bow.vocab.empty())
    throw AnalysisError("empty vocabulary after stop-word and frequency filtering");
  return bow;
}

}  // namespace rstparse::analysis
