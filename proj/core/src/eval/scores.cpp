#include "rstparse/eval/scores.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rstparse/errors.hpp"

namespace rstparse::eval {

namespace {

void collect(const RstTree& t, std::vector<LabeledSpan>& out) {
  if (t.is_leaf()) return;
  out.push_back({t.span_lo, t.span_hi, t.nuc, t.relation});
  collect(*t.left, out);
  collect(*t.right, out);
}

struct Counts {
  long gold = 0;
  long pred = 0;
  long sp = 0;
  long nu = 0;
  long rel = 0;
};

Counts count_pair(const TreePair& pair, const ScoringOptions& opt) {
  if (!pair.gold || !pair.pred) throw EvalError("tree pair with missing tree");
  if (pair.gold->span_hi != pair.pred->span_hi || pair.gold->span_lo != pair.pred->span_lo)
    throw EvalError("EDU count mismatch between gold and predicted tree");

  auto gold = extract_spans(*pair.gold);
  auto pred = extract_spans(*pair.pred);
  if (!opt.include_root) {
    auto is_root = [&](const LabeledSpan& s) {
      return s.lo == pair.gold->span_lo && s.hi == pair.gold->span_hi;
    };
    std::erase_if(gold, is_root);
    std::erase_if(pred, is_root);
  }

  std::map<std::pair<int, int>, const LabeledSpan*> gold_by_span;
  for (const auto& s : gold) gold_by_span[{s.lo, s.hi}] = &s;

  Counts c;
  c.gold = static_cast<long>(gold.size());
  c.pred = static_cast<long>(pred.size());
  for (const auto& p : pred) {
    auto it = gold_by_span.find({p.lo, p.hi});
    if (it == gold_by_span.end()) continue;
    ++c.sp;
    if (it->second->nuc == p.nuc) ++c.nu;
    if (it->second->relation == p.relation) ++c.rel;
  }
  return c;
}

double f1_percent(long match, long gold, long pred) {
  if (gold == 0 && pred == 0) return 100.0;  // nothing to predict, trivially perfect
  if (gold == 0 || pred == 0) return 0.0;
  double p = static_cast<double>(match) / static_cast<double>(pred);
  double r = static_cast<double>(match) / static_cast<double>(gold);
  if (p + r == 0.0) return 0.0;
  return 100.0 * 2.0 * p * r / (p + r);
}

F1Triple triple_from(const Counts& c) {
  return {f1_percent(c.sp, c.gold, c.pred), f1_percent(c.nu, c.gold, c.pred),
          f1_percent(c.rel, c.gold, c.pred)};
}

}  // namespace

std::vector<LabeledSpan> extract_spans(const RstTree& tree) {
  std::vector<LabeledSpan> out;
  collect(tree, out);
  return out;
}

F1Triple micro_scores(const std::vector<TreePair>& pairs, const ScoringOptions& opt) {
  Counts total;
  for (const auto& pair : pairs) {
    Counts c = count_pair(pair, opt);
    total.gold += c.gold;
    total.pred += c.pred;
    total.sp += c.sp;
    total.nu += c.nu;
    total.rel += c.rel;
  }
  return triple_from(total);
}

namespace {

F1Triple macro_per_document(const std::vector<TreePair>& pairs, const ScoringOptions& opt) {
  F1Triple mean;
  for (const auto& pair : pairs) {
    F1Triple t = triple_from(count_pair(pair, opt));
    mean.sp += t.sp;
    mean.nu += t.nu;
    mean.rel += t.rel;
  }
  double n = static_cast<double>(pairs.size());
  return {mean.sp / n, mean.nu / n, mean.rel / n};
}

// Span and nuclearity have no class axis, so only Rel changes under the
// per-class flag: one-vs-rest F1 per relation class appearing in gold,
// averaged over classes.
F1Triple macro_per_class(const std::vector<TreePair>& pairs, const ScoringOptions& opt) {
  std::map<std::string, Counts> per_class;
  for (const auto& pair : pairs) {
    auto gold = extract_spans(*pair.gold);
    auto pred = extract_spans(*pair.pred);
    if (!opt.include_root) {
      auto is_root = [&](const LabeledSpan& s) {
        return s.lo == pair.gold->span_lo && s.hi == pair.gold->span_hi;
      };
      std::erase_if(gold, is_root);
      std::erase_if(pred, is_root);
    }
    std::map<std::pair<int, int>, const LabeledSpan*> gold_by_span;
    for (const auto& s : gold) {
      gold_by_span[{s.lo, s.hi}] = &s;
      ++per_class[s.relation].gold;
    }
    for (const auto& p : pred) {
      ++per_class[p.relation].pred;
      auto it = gold_by_span.find({p.lo, p.hi});
      if (it != gold_by_span.end() && it->second->relation == p.relation)
        ++per_class[p.relation].rel;
    }
  }
  F1Triple out = macro_per_document(pairs, opt);
  double rel_sum = 0.0;
  int classes = 0;
  for (const auto& [cls, c] : per_class) {
    if (c.gold == 0) continue;  // classes only hallucinated by the parser
    rel_sum += f1_percent(c.rel, c.gold, c.pred);
    ++classes;
  }
  out.rel = classes ? rel_sum / classes : 100.0;
  return out;
}

}  // namespace

F1Triple macro_scores(const std::vector<TreePair>& pairs, const ScoringOptions& opt) {
  if (pairs.empty()) throw EvalError("no documents to score");
  if (opt.macro_per_class) return macro_per_class(pairs, opt);
  return macro_per_document(pairs, opt);
}

ScoreReport score_corpora(const Corpus& gold, const Corpus& pred, const ScoringOptions& opt) {
  std::map<std::string, const AnnotatedDoc*> pred_by_id;
  for (const auto& d : pred) pred_by_id[d.doc.doc_id] = &d;

  std::vector<TreePair> all;
  std::map<std::string, std::vector<TreePair>> by_lang;
  std::map<std::string, int> lang_docs;
  for (const auto& g : gold) {
    auto it = pred_by_id.find(g.doc.doc_id);
    if (it == pred_by_id.end())
      throw EvalError("no prediction for document " + g.doc.doc_id);
    TreePair pair{g.tree.get(), it->second->tree.get()};
    all.push_back(pair);
    by_lang[g.doc.lang].push_back(pair);
    ++lang_docs[g.doc.lang];
  }
  if (all.empty()) throw EvalError("no documents to score");

  ScoreReport report;
  report.pooled.macro = macro_scores(all, opt);
  report.pooled.micro = micro_scores(all, opt);
  report.pooled.documents = static_cast<int>(all.size());
  for (const auto& [lang, pairs] : by_lang) {
    ScoreBlock block;
    block.macro = macro_scores(pairs, opt);
    block.micro = micro_scores(pairs, opt);
    block.documents = lang_docs[lang];
    report.per_language[lang] = block;
  }
  return report;
}

namespace {

nlohmann::json triple_json(const F1Triple& t) {
  return {{"Sp", t.sp}, {"Nu", t.nu}, {"Rel", t.rel}};
}

nlohmann::json block_json(const ScoreBlock& b) {
  return {{"macro_f1", triple_json(b.macro)},
          {"micro_f1", triple_json(b.micro)},
          {"documents", b.documents}};
}

}  // namespace

std::string report_to_json(const ScoreReport& report) {
  nlohmann::json j;
  j["pooled"] = block_json(report.pooled);
  nlohmann::json langs = nlohmann::json::object();
  for (const auto& [lang, block] : report.per_language) langs[lang] = block_json(block);
  j["per_language"] = std::move(langs);
  return j.dump(2);
}

std::string report_to_text(const ScoreReport& report) {
  std::ostringstream out;
  auto row = [&](const std::string& name, const ScoreBlock& b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%-10s docs=%-4d macro Sp/Nu/Rel = %6.2f %6.2f %6.2f   micro Sp/Nu/Rel = "
                  "%6.2f %6.2f %6.2f\n",
                  name.c_str(), b.documents, b.macro.sp, b.macro.nu, b.macro.rel, b.micro.sp,
                  b.micro.nu, b.micro.rel);
    out << buf;
  };
  row("pooled", report.pooled);
  for (const auto& [lang, block] : report.per_language) row(lang, block);
  return out.str();
}

}  // namespace rstparse::eval
