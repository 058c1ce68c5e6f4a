#include "rstparse/translation/pipeline.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "rstparse/errors.hpp"
#include "rstparse/treebank/tokenize.hpp"
#include "rstparse/util/strings.hpp"

namespace rstparse::translation {

AnnotatedDoc translate_document(const AnnotatedDoc& doc, const std::string& target_lang,
                                TranslationClient& client, TranslationCache& cache) {
  if (doc.doc.edus.empty()) throw ContractError("document " + doc.doc.doc_id + " has no EDUs");
  if (!doc.tree) throw ContractError("document " + doc.doc.doc_id + " has no tree");

  std::vector<std::string> sources;
  sources.reserve(doc.doc.edus.size());
  for (const auto& e : doc.doc.edus) sources.push_back(e.text);
  const std::string joined = util::join(sources, "\n");

  std::vector<std::string> translated;
  if (auto hit = cache.get(client.id(), doc.doc.lang, target_lang, joined)) {
    translated = util::split_lines(*hit);
  } else {
    translated = client.translate_batch(sources, doc.doc.lang, target_lang);
    if (translated.size() != sources.size())
      throw SegmentationError("client returned " + std::to_string(translated.size()) +
                              " segments for " + std::to_string(sources.size()) +
                              " EDUs in document " + doc.doc.doc_id);
    for (size_t i = 0; i < translated.size(); ++i) {
      if (util::trim(translated[i]).empty())
        throw SegmentationError("empty translated EDU " + std::to_string(i + 1) +
                                " in document " + doc.doc.doc_id);
      if (translated[i].find('\n') != std::string::npos)
        throw SegmentationError("translated EDU " + std::to_string(i + 1) +
                                " contains a line break in document " + doc.doc.doc_id);
    }
    cache.put(client.id(), doc.doc.lang, target_lang, joined, util::join(translated, "\n"));
  }
  if (translated.size() != sources.size())
    throw SegmentationError("cached translation for document " + doc.doc.doc_id +
                            " has a mismatched segment count");

  AnnotatedDoc out;
  out.doc = doc.doc;
  out.doc.lang = target_lang;
  for (size_t i = 0; i < translated.size(); ++i) out.doc.edus[i].text = translated[i];
  treebank::retokenize(out.doc, doc.doc.tokenizer);
  out.tree = doc.tree->clone();
  return out;
}

TranslateResult translate_corpus(const Corpus& corpus, const std::string& target_lang,
                                 TranslationClient& client, TranslationCache& cache,
                                 int parallelism) {
  if (parallelism < 1) throw ConfigError("parallelism must be at least 1");

  std::vector<std::optional<AnnotatedDoc>> results(corpus.size());
  std::vector<std::optional<TranslateFailure>> failures(corpus.size());

  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= corpus.size()) return;
      try {
        results[i] = translate_document(corpus[i], target_lang, client, cache);
      } catch (const Error& e) {
        failures[i] = TranslateFailure{corpus[i].doc.doc_id, e.what()};
      }
    }
  };

  if (parallelism == 1 || corpus.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    int n = std::min<int>(parallelism, static_cast<int>(corpus.size()));
    threads.reserve(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  TranslateResult out;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (results[i])
      out.corpus.push_back(std::move(*results[i]));
    else if (failures[i])
      out.failures.push_back(std::move(*failures[i]));
  }
  return out;
}

}  // namespace rstparse::translation
