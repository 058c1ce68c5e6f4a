#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rstparse/eval/scores.hpp"
#include "rstparse/model/checkpoint.hpp"
#include "rstparse/model/parser_model.hpp"
#include "rstparse/types.hpp"

namespace rstparse::train {

struct TrainConfig {
  model::Hyperparams hp;
  double validation_fraction = 0.1;  // per-language carve when no valid set given
  std::vector<std::uint64_t> seeds = {1};
  std::string run_dir;  // empty: keep everything in memory, write nothing
  double clip_norm = 5.0;
  size_t backbone_vocab_limit = 50000;

  void validate() const;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  eval::F1Triple valid_micro;
  double monitored = 0.0;  // mean of the three validation micro F1 scores
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;  // 0 = initial parameters
  double best_metric = 0.0;
  std::string checkpoint_path;  // best checkpoint, when run_dir is set
};

std::string record_to_json(const RunRecord& record);

// Splits off validation_fraction of each language's documents,
// deterministically per seed.
std::pair<Corpus, Corpus> carve_validation(const Corpus& corpus, double fraction,
                                           std::uint64_t seed);

// Mini-batch optimization of the total loss on an existing model. Restores
// the best checkpoint's parameters into the model before returning.
RunRecord train_model(model::ParserModel& model, const Corpus& train_corpus,
                      const Corpus& valid_corpus, const TrainConfig& cfg, std::uint64_t seed);

struct TrainResult {
  std::unique_ptr<model::ParserModel> model;
  RunRecord record;
};

// Convenience wrapper: builds a toy-backbone parser from the training
// corpus (label vocabulary + token vocabulary), carves validation when none
// is supplied, and trains.
TrainResult train(const Corpus& train_corpus, const Corpus& valid_corpus, const TrainConfig& cfg,
                  std::uint64_t seed);

}  // namespace rstparse::train
