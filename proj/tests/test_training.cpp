#include <doctest.h>

#include <filesystem>

#include "rstparse/eval/scores.hpp"
#include "rstparse/model/checkpoint.hpp"
#include "rstparse/train/sweep.hpp"
#include "rstparse/train/trainer.hpp"
#include "support.hpp"

using namespace rstparse;
using namespace rstparse::train;

namespace {

model::Hyperparams small_hp() {
  model::Hyperparams hp;
  hp.d_emb = 32;
  hp.d_hidden = 32;
  hp.window = 500;
  hp.stride = 200;
  hp.dropout = 0.0;
  hp.weight_decay = 1e-5;
  hp.lr = 1e-3;
  hp.batch_size = 4;
  hp.epochs = 300;
  return hp;
}

struct Accuracy {
  double span = 0.0;
  double joint = 0.0;
};

Accuracy training_accuracy(model::ParserModel& model, const Corpus& corpus) {
  long total = 0, span_match = 0, joint_match = 0;
  for (const auto& doc : corpus) {
    auto pred = model.parse(doc.doc);
    auto gold_spans = eval::extract_spans(*doc.tree);
    auto pred_spans = eval::extract_spans(*pred);
    std::map<std::pair<int, int>, const eval::LabeledSpan*> gold_by_span;
    for (const auto& s : gold_spans) gold_by_span[{s.lo, s.hi}] = &s;
    total += static_cast<long>(gold_spans.size());
    for (const auto& p : pred_spans) {
      auto it = gold_by_span.find({p.lo, p.hi});
      if (it == gold_by_span.end()) continue;
      ++span_match;
      if (it->second->nuc == p.nuc && it->second->relation == p.relation) ++joint_match;
    }
  }
  return {100.0 * double(span_match) / double(total), 100.0 * double(joint_match) / double(total)};
}

}  // namespace

TEST_CASE("overfit: four tiny documents are memorized within 300 epochs") {
  Rng rng(2025);
  Corpus corpus;
  for (int d = 0; d < 4; ++d) {
    int m = 3 + static_cast<int>(rng.index(6));  // m in [3, 8]
    AnnotatedDoc ad;
    ad.doc = testsup::random_document(rng, m, "ov" + std::to_string(d));
    ad.tree = testsup::random_binary_tree(rng, m);
    corpus.push_back(std::move(ad));
  }

  TrainConfig cfg;
  cfg.hp = small_hp();
  cfg.validation_fraction = 0.0;
  auto result = rstparse::train::train(corpus, {}, cfg, 1);
  Accuracy acc = training_accuracy(*result.model, corpus);
  CHECK(acc.span == doctest::Approx(100.0));
  CHECK(acc.joint >= 95.0);
}

TEST_CASE("training loss is non-increasing over the first five epochs") {
  Rng rng(2026);
  Corpus corpus;
  for (int d = 0; d < 4; ++d) {
    AnnotatedDoc ad;
    ad.doc = testsup::random_document(rng, 5, "mono" + std::to_string(d));
    ad.tree = testsup::random_binary_tree(rng, 5);
    corpus.push_back(std::move(ad));
  }
  TrainConfig cfg;
  cfg.hp = small_hp();
  cfg.hp.epochs = 5;
  cfg.validation_fraction = 0.0;
  auto result = rstparse::train::train(corpus, {}, cfg, 3);
  REQUIRE(result.record.epochs.size() == 5);
  for (size_t e = 1; e < result.record.epochs.size(); ++e)
    CHECK(result.record.epochs[e].train_loss <= result.record.epochs[e - 1].train_loss + 1e-9);
}

TEST_CASE("epochs=0 leaves the initial checkpoint only") {
  Rng rng(2027);
  Corpus corpus = testsup::random_corpus(rng, 4, 3, 5);
  TrainConfig cfg;
  cfg.hp = small_hp();
  cfg.hp.epochs = 0;
  cfg.validation_fraction = 0.0;
  cfg.run_dir = (std::filesystem::temp_directory_path() / "rstparse_e0_run").string();
  std::filesystem::remove_all(cfg.run_dir);
  auto result = rstparse::train::train(corpus, {}, cfg, 9);
  CHECK(result.record.epochs.empty());
  CHECK(result.record.best_epoch == 0);
  CHECK(std::filesystem::exists(result.record.checkpoint_path));
  CHECK(std::filesystem::exists(std::filesystem::path(cfg.run_dir) / "record.json"));
  std::filesystem::remove_all(cfg.run_dir);
}

TEST_CASE("same seed and data give identical final parameters") {
  Rng rng(2028);
  Corpus corpus = testsup::random_corpus(rng, 5, 3, 6);
  TrainConfig cfg;
  cfg.hp = small_hp();
  cfg.hp.epochs = 3;
  cfg.validation_fraction = 0.0;
  auto r1 = rstparse::train::train(corpus, {}, cfg, 7);
  auto r2 = rstparse::train::train(corpus, {}, cfg, 7);
  auto p1 = r1.model->parameters();
  auto p2 = r2.model->parameters();
  REQUIRE(p1.size() == p2.size());
  for (size_t i = 0; i < p1.size(); ++i)
    CHECK((p1[i]->value - p2[i]->value).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("checkpoint round trip: saved model scores exactly like the live one") {
  Rng rng(2029);
  Corpus corpus = testsup::random_corpus(rng, 6, 3, 6);
  Corpus valid = testsup::random_corpus(rng, 3, 3, 6);
  TrainConfig cfg;
  cfg.hp = small_hp();
  cfg.hp.epochs = 2;
  cfg.validation_fraction = 0.0;
  cfg.run_dir = (std::filesystem::temp_directory_path() / "rstparse_ckpt_run").string();
  std::filesystem::remove_all(cfg.run_dir);
  auto result = rstparse::train::train(corpus, valid, cfg, 5);

  auto loaded = model::load_checkpoint(result.record.checkpoint_path);
  for (const auto& doc : valid) {
    auto live = result.model->parse(doc.doc);
    auto restored = loaded->parse(doc.doc);
    CHECK(tree_equal(*live, *restored));
  }
  std::filesystem::remove_all(cfg.run_dir);
}

TEST_CASE("best checkpoint is the argmax of the monitored metric") {
  Rng rng(2030);
  Corpus corpus = testsup::random_corpus(rng, 6, 3, 6);
  Corpus valid = testsup::random_corpus(rng, 3, 3, 6);
  TrainConfig cfg;
  cfg.hp = small_hp();
  cfg.hp.epochs = 4;
  cfg.validation_fraction = 0.0;
  auto result = rstparse::train::train(corpus, valid, cfg, 11);
  double best = result.record.best_metric;
  for (const auto& e : result.record.epochs) CHECK(e.monitored <= best + 1e-12);
}

TEST_CASE("carve_validation is per-language and deterministic") {
  Rng rng(2031);
  Corpus corpus;
  for (const char* lang : {"en", "pt"}) {
    Corpus part = testsup::random_corpus(rng, 20, 2, 5, lang);
    for (auto& d : part) corpus.push_back(std::move(d));
  }
  auto [train1, valid1] = carve_validation(corpus, 0.1, 99);
  auto [train2, valid2] = carve_validation(corpus, 0.1, 99);
  CHECK(valid1.size() == 4);  // 2 per language
  CHECK(train1.size() + valid1.size() == corpus.size());
  REQUIRE(valid1.size() == valid2.size());
  for (size_t i = 0; i < valid1.size(); ++i)
    CHECK(valid1[i].doc.doc_id == valid2[i].doc.doc_id);
  std::map<std::string, int> per_lang;
  for (const auto& d : valid1) ++per_lang[d.doc.lang];
  CHECK(per_lang["en"] == 2);
  CHECK(per_lang["pt"] == 2);
}

TEST_CASE("sweep with a single seed equals that run") {
  Rng rng(2032);
  Corpus corpus = testsup::random_corpus(rng, 6, 3, 5);
  Corpus test = testsup::random_corpus(rng, 3, 3, 5);
  TrainConfig cfg;
  cfg.hp = small_hp();
  cfg.hp.epochs = 1;
  cfg.validation_fraction = 0.0;
  cfg.seeds = {4};
  SweepResult sweep = seed_sweep(corpus, test, cfg);
  REQUIRE(sweep.runs.size() == 1);
  CHECK_FALSE(sweep.runs[0].failed);
  CHECK(sweep.mean.pooled.micro.sp ==
        doctest::Approx(sweep.runs[0].report.pooled.micro.sp));
  CHECK(sweep.failures == 0);
}

TEST_CASE("sweep mean is the arithmetic mean of the per-seed reports") {
  Rng rng(2033);
  Corpus corpus = testsup::random_corpus(rng, 6, 3, 5);
  Corpus test = testsup::random_corpus(rng, 3, 3, 5);
  TrainConfig cfg;
  cfg.hp = small_hp();
  cfg.hp.epochs = 1;
  cfg.validation_fraction = 0.0;
  cfg.seeds = {4, 9};
  SweepResult sweep = seed_sweep(corpus, test, cfg);
  REQUIRE(sweep.runs.size() == 2);
  double expect =
      (sweep.runs[0].report.pooled.micro.rel + sweep.runs[1].report.pooled.micro.rel) / 2.0;
  CHECK(sweep.mean.pooled.micro.rel == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("empty seed list is a ConfigError") {
  Rng rng(2034);
  Corpus corpus = testsup::random_corpus(rng, 4, 3, 5);
  TrainConfig cfg;
  cfg.hp = small_hp();
  cfg.seeds = {};
  CHECK_THROWS_AS(seed_sweep(corpus, corpus, cfg), ConfigError);
}
