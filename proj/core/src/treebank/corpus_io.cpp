#include "rstparse/treebank/corpus_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rstparse/treebank/tokenize.hpp"

namespace rstparse::treebank {

using nlohmann::json;

namespace {

json tree_to_json(const RstTree& t) {
  if (t.is_leaf()) return json{{"edu", t.edu}};
  return json{{"nuc", to_string(t.nuc)},
              {"rel", t.relation},
              {"left", tree_to_json(*t.left)},
              {"right", tree_to_json(*t.right)}};
}

std::unique_ptr<RstTree> tree_from_json(const json& j) {
  if (j.contains("edu")) return RstTree::make_leaf(j.at("edu").get<int>());
  return RstTree::make_node(tree_from_json(j.at("left")), tree_from_json(j.at("right")),
                            nuclearity_from_string(j.at("nuc").get<std::string>()),
                            j.at("rel").get<std::string>());
}

}  // namespace

std::string doc_to_json(const AnnotatedDoc& doc) {
  json j;
  j["doc_id"] = doc.doc.doc_id;
  j["lang"] = doc.doc.lang;
  json edus = json::array();
  for (const auto& e : doc.doc.edus) edus.push_back(e.text);
  j["edus"] = std::move(edus);
  if (!doc.tree) throw ContractError("document " + doc.doc.doc_id + " has no tree");
  j["tree"] = tree_to_json(*doc.tree);
  if (!doc.doc.source_treebank.empty()) j["source_treebank"] = doc.doc.source_treebank;
  return j.dump();
}

AnnotatedDoc doc_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad JSONL record: ") + e.what());
  }
  AnnotatedDoc out;
  try {
    out.doc.doc_id = j.at("doc_id").get<std::string>();
    out.doc.lang = j.at("lang").get<std::string>();
    int index = 0;
    for (const auto& text : j.at("edus")) {
      Edu e;
      e.index = ++index;
      e.text = text.get<std::string>();
      out.doc.edus.push_back(std::move(e));
    }
    if (j.contains("source_treebank"))
      out.doc.source_treebank = j.at("source_treebank").get<std::string>();
    out.tree = tree_from_json(j.at("tree"));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad JSONL record: ") + e.what());
  }
  if (out.doc.edus.empty())
    throw ParseError("document " + out.doc.doc_id + " has no EDUs");
  retokenize(out.doc);
  validate_tree(*out.tree);
  if (out.tree->span_hi != out.doc.edu_count())
    throw ParseError("document " + out.doc.doc_id + ": tree covers " +
                     std::to_string(out.tree->span_hi) + " EDUs but document has " +
                     std::to_string(out.doc.edu_count()));
  return out;
}

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& doc : corpus) out << doc_to_json(doc) << '\n';
}

void write_corpus_jsonl(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  write_corpus_jsonl(corpus, out);
  if (!out) throw IoError("write failed: " + path);
}

Corpus read_corpus_jsonl(std::istream& in, const std::string& origin) {
  Corpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      corpus.push_back(doc_from_json(line));
    } catch (const Error& e) {
      throw ParseError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return corpus;
}

Corpus read_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus: " + path);
  return read_corpus_jsonl(in, path);
}

}  // namespace rstparse::treebank
