#include "rstparse/train/trainer.hpp"

#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "rstparse/train/adam.hpp"
#include "rstparse/treebank/relation_map.hpp"
#include "rstparse/util/rng.hpp"

namespace rstparse::train {

namespace fs = std::filesystem;
using nlohmann::json;

void TrainConfig::validate() const {
  hp.validate();
  if (seeds.empty()) throw ConfigError("seed list must not be empty");
  if (validation_fraction < 0.0 || validation_fraction >= 1.0)
    throw ConfigError("validation fraction must be in [0, 1)");
}

std::pair<Corpus, Corpus> carve_validation(const Corpus& corpus, double fraction,
                                           std::uint64_t seed) {
  std::map<std::string, std::vector<size_t>> by_lang;
  for (size_t i = 0; i < corpus.size(); ++i) by_lang[corpus[i].doc.lang].push_back(i);

  std::vector<bool> in_valid(corpus.size(), false);
  for (auto& [lang, indices] : by_lang) {
    Rng rng(seed ^ fnv1a_hash("valid:" + lang));
    rng.shuffle(indices);
    // At least one validation document per language once the corpus has
    // more than one sample of it.
    size_t take = static_cast<size_t>(fraction * static_cast<double>(indices.size()));
    if (take == 0 && fraction > 0.0 && indices.size() > 1) take = 1;
    if (take >= indices.size()) take = indices.size() - 1;
    for (size_t k = 0; k < take; ++k) in_valid[indices[k]] = true;
  }

  std::pair<Corpus, Corpus> out;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (in_valid[i])
      out.second.push_back(corpus[i].copy());
    else
      out.first.push_back(corpus[i].copy());
  }
  return out;
}

namespace {

double validation_metric(model::ParserModel& model, const Corpus& valid,
                         eval::F1Triple& micro_out) {
  if (valid.empty()) return 0.0;
  std::vector<std::unique_ptr<RstTree>> predictions;
  std::vector<eval::TreePair> pairs;
  predictions.reserve(valid.size());
  for (const auto& doc : valid) {
    predictions.push_back(model.parse(doc.doc));
    pairs.push_back({doc.tree.get(), predictions.back().get()});
  }
  micro_out = eval::micro_scores(pairs);
  return (micro_out.sp + micro_out.nu + micro_out.rel) / 3.0;
}

struct Snapshot {
  std::vector<Eigen::MatrixXd> values;
  void capture(model::ParserModel& model) {
    values.clear();
    for (model::Tensor* t : model.parameters()) values.push_back(t->value);
  }
  void restore(model::ParserModel& model) const {
    auto params = model.parameters();
    for (size_t i = 0; i < params.size(); ++i) params[i]->value = values[i];
  }
};

}  // namespace

RunRecord train_model(model::ParserModel& model, const Corpus& train_corpus,
                      const Corpus& valid_corpus, const TrainConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (train_corpus.empty()) throw ConfigError("training corpus is empty");

  const model::Hyperparams& hp = model.hyperparams();
  AdamOptimizer adam(model.parameters(), hp.lr);

  // Gold traces are fixed per document; precompute them.
  std::vector<oracle::SplitTrace> traces;
  traces.reserve(train_corpus.size());
  for (const auto& doc : train_corpus)
    traces.push_back(oracle::tree_to_trace(*doc.tree, doc.doc.doc_id));

  RunRecord record;
  record.seed = seed;

  const bool persist = !cfg.run_dir.empty();
  std::ofstream log;
  if (persist) {
    fs::create_directories(cfg.run_dir);
    log.open(fs::path(cfg.run_dir) / "train.log");
  }

  Snapshot best;
  best.capture(model);
  eval::F1Triple initial_micro;
  record.best_metric = validation_metric(model, valid_corpus, initial_micro);
  record.best_epoch = 0;
  if (persist) {
    record.checkpoint_path = (fs::path(cfg.run_dir) / "best.ckpt").string();
    model::save_checkpoint(model, record.checkpoint_path);
  }

  Rng shuffle_rng(seed ^ fnv1a_hash("epoch-shuffle"));
  std::vector<size_t> order(train_corpus.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 1; epoch <= hp.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double epoch_loss = 0.0;
    for (size_t start = 0; start < order.size(); start += static_cast<size_t>(hp.batch_size)) {
      size_t end = std::min(order.size(), start + static_cast<size_t>(hp.batch_size));
      model.zero_grad();
      for (size_t i = start; i < end; ++i) {
        const auto& doc = train_corpus[order[i]];
        auto loss = model.compute_loss(doc.doc, traces[order[i]],
                                       {.training = true, .add_regularizer = false});
        epoch_loss += loss.total;
      }
      if (hp.weight_decay > 0.0) epoch_loss += model.add_l2_regularization(hp.weight_decay);
      adam.clip_global_norm(cfg.clip_norm);
      adam.step();
    }

    EpochRecord er;
    er.epoch = epoch;
    er.train_loss = epoch_loss;
    er.monitored = validation_metric(model, valid_corpus, er.valid_micro);
    record.epochs.push_back(er);
    if (log)
      log << "epoch " << epoch << " loss " << epoch_loss << " valid_micro " << er.valid_micro.sp
          << '/' << er.valid_micro.nu << '/' << er.valid_micro.rel << " monitored "
          << er.monitored << '\n';

    if (persist)
      model::save_checkpoint(model, (fs::path(cfg.run_dir) / "last.ckpt").string());
    if (valid_corpus.empty() || er.monitored > record.best_metric) {
      record.best_metric = er.monitored;
      record.best_epoch = epoch;
      best.capture(model);
      if (persist) model::save_checkpoint(model, record.checkpoint_path);
    }
  }

  best.restore(model);
  if (persist) {
    std::ofstream out(fs::path(cfg.run_dir) / "record.json");
    if (!out) throw IoError("cannot write record.json in " + cfg.run_dir);
    out << record_to_json(record) << '\n';
  }
  return record;
}

TrainResult train(const Corpus& train_corpus, const Corpus& valid_corpus, const TrainConfig& cfg,
                  std::uint64_t seed) {
  cfg.validate();
  if (train_corpus.empty()) throw ConfigError("training corpus is empty");

  Corpus train_set = copy_corpus(train_corpus);
  Corpus valid_set = copy_corpus(valid_corpus);
  if (valid_set.empty() && cfg.validation_fraction > 0.0) {
    auto split = carve_validation(train_set, cfg.validation_fraction, seed);
    train_set = std::move(split.first);
    valid_set = std::move(split.second);
  }

  auto labels = model::JointLabelVocab::from_corpus(train_set);
  auto vocab = model::ToyBackbone::build_vocab(train_set, cfg.backbone_vocab_limit);
  auto backbone = std::make_unique<model::ToyBackbone>(std::move(vocab), cfg.hp.d_emb);

  TrainResult result;
  result.model =
      std::make_unique<model::ParserModel>(cfg.hp, std::move(labels), std::move(backbone));
  result.model->relation_inventory() = treebank::RelationMap::default_inventory().inventory();
  result.model->init_params(seed);
  result.record = train_model(*result.model, train_set, valid_set, cfg, seed);
  return result;
}

std::string record_to_json(const RunRecord& record) {
  json j;
  j["seed"] = record.seed;
  j["best_epoch"] = record.best_epoch;
  j["best_metric"] = record.best_metric;
  j["checkpoint"] = record.checkpoint_path;
  json epochs = json::array();
  for (const auto& e : record.epochs) {
    epochs.push_back({{"epoch", e.epoch},
                      {"train_loss", e.train_loss},
                      {"valid_micro",
                       {{"Sp", e.valid_micro.sp}, {"Nu", e.valid_micro.nu}, {"Rel", e.valid_micro.rel}}},
                      {"monitored", e.monitored}});
  }
  j["epochs"] = std::move(epochs);
  return j.dump(2);
}

}  // namespace rstparse::train
