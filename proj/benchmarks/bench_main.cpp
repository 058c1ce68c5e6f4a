#include <benchmark/benchmark.h>

#include "rstparse/analysis/lda.hpp"
#include "rstparse/analysis/text_prep.hpp"
#include "rstparse/eval/scores.hpp"
#include "rstparse/model/parser_model.hpp"
#include "rstparse/oracle/trace.hpp"
#include "rstparse/treebank/preprocess.hpp"
#include "rstparse/treebank/tokenize.hpp"
#include "rstparse/util/rng.hpp"

using namespace rstparse;

namespace {

std::unique_ptr<RstTree> random_tree(Rng& rng, int lo, int hi) {
  if (lo == hi) return RstTree::make_leaf(lo);
  int k = lo + static_cast<int>(rng.index(static_cast<size_t>(hi - lo)));
  Nuclearity nuc = rng.index(2) ? Nuclearity::NS : Nuclearity::NN;
  return RstTree::make_node(random_tree(rng, lo, k), random_tree(rng, k + 1, hi), nuc,
                            "Elaboration");
}

Document random_doc(Rng& rng, int m) {
  Document doc;
  doc.doc_id = "bench";
  doc.lang = "en";
  for (int i = 1; i <= m; ++i) {
    Edu e;
    e.index = i;
    e.text = "token" + std::to_string(rng.index(40)) + " token" + std::to_string(rng.index(40)) +
             " token" + std::to_string(rng.index(40));
    doc.edus.push_back(std::move(e));
  }
  treebank::retokenize(doc);
  return doc;
}

std::unique_ptr<model::ParserModel> bench_model(int dim, const Corpus& corpus) {
  model::Hyperparams hp;
  hp.d_emb = dim;
  hp.d_hidden = dim;
  hp.dropout = 0.0;
  auto labels = model::JointLabelVocab::from_corpus(corpus);
  auto backbone =
      std::make_unique<model::ToyBackbone>(model::ToyBackbone::build_vocab(corpus), dim);
  auto m = std::make_unique<model::ParserModel>(hp, std::move(labels), std::move(backbone));
  m->init_params(1);
  return m;
}

void BM_TraceRoundTrip(benchmark::State& state) {
  Rng rng(1);
  auto tree = random_tree(rng, 1, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto trace = oracle::tree_to_trace(*tree);
    auto back = oracle::trace_to_tree(trace);
    benchmark::DoNotOptimize(back);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TraceRoundTrip)->Range(8, 512)->Complexity();

void BM_Binarize(benchmark::State& state) {
  // flat multinuclear node with k children
  treebank::RawNode root;
  root.role = treebank::RawRole::Root;
  for (int i = 1; i <= state.range(0); ++i) {
    treebank::RawNode leaf;
    leaf.role = treebank::RawRole::Nucleus;
    leaf.relation = "Joint";
    leaf.leaf_index = i;
    root.children.push_back(std::move(leaf));
  }
  treebank::RawTree raw;
  raw.has_root = true;
  raw.root = std::move(root);
  for (auto _ : state) {
    auto tree = treebank::binarize(raw);
    benchmark::DoNotOptimize(tree);
  }
}
BENCHMARK(BM_Binarize)->Range(8, 512);

void BM_MicroScores(benchmark::State& state) {
  Rng rng(2);
  int m = static_cast<int>(state.range(0));
  auto gold = random_tree(rng, 1, m);
  auto pred = random_tree(rng, 1, m);
  std::vector<eval::TreePair> pairs{{gold.get(), pred.get()}};
  for (auto _ : state) {
    auto f1 = eval::micro_scores(pairs);
    benchmark::DoNotOptimize(f1);
  }
}
BENCHMARK(BM_MicroScores)->Range(8, 512);

void BM_Parse(benchmark::State& state) {
  Rng rng(3);
  int m = static_cast<int>(state.range(0));
  Corpus corpus;
  corpus.push_back({random_doc(rng, 4), random_tree(rng, 1, 4)});
  auto model = bench_model(64, corpus);
  Document doc = random_doc(rng, m);
  for (auto _ : state) {
    auto tree = model->parse(doc);
    benchmark::DoNotOptimize(tree);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Parse)->Range(4, 64)->Complexity();

void BM_LossBackward(benchmark::State& state) {
  Rng rng(4);
  int m = static_cast<int>(state.range(0));
  Corpus corpus;
  corpus.push_back({random_doc(rng, m), random_tree(rng, 1, m)});
  auto model = bench_model(64, corpus);
  auto gold = oracle::tree_to_trace(*corpus[0].tree);
  for (auto _ : state) {
    model->zero_grad();
    auto loss = model->compute_loss(corpus[0].doc, gold, {.training = false});
    benchmark::DoNotOptimize(loss);
  }
}
BENCHMARK(BM_LossBackward)->Range(4, 64);

void BM_GibbsSweeps(benchmark::State& state) {
  Rng rng(5);
  Corpus corpus;
  for (int d = 0; d < 50; ++d) {
    AnnotatedDoc ad;
    ad.doc.doc_id = "d" + std::to_string(d);
    ad.doc.lang = "en";
    std::string text;
    for (int w = 0; w < 40; ++w) text += "word" + std::to_string(rng.index(60)) + " ";
    ad.doc.edus.push_back({1, text, {}});
    treebank::retokenize(ad.doc);
    ad.tree = RstTree::make_leaf(1);
    corpus.push_back(std::move(ad));
  }
  analysis::PrepOptions prep;
  prep.min_corpus_frequency = 1;
  analysis::BagOfWords bow = analysis::prepare_corpus(corpus, prep);
  analysis::LdaOptions opt;
  opt.topics = 5;
  opt.iterations = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto model = analysis::fit_lda(bow, opt, 7);
    benchmark::DoNotOptimize(model);
  }
}
BENCHMARK(BM_GibbsSweeps)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
