#pragma once

#include <string>
#include <vector>

#include "rstparse/eval/scores.hpp"
#include "rstparse/train/trainer.hpp"
#include "rstparse/types.hpp"

namespace rstparse::train {

struct SweepRun {
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  eval::ScoreReport report;  // on the test corpus
  RunRecord record;
};

struct SweepResult {
  std::vector<SweepRun> runs;
  eval::ScoreReport mean;  // arithmetic mean over successful runs
  int failures = 0;
};

std::string sweep_to_json(const SweepResult& result);

// One training run per seed in cfg.seeds, each evaluated on the test
// corpus; per-run failures are recorded, not fatal. Throws ConfigError on
// an empty seed list.
SweepResult seed_sweep(const Corpus& train_corpus, const Corpus& test_corpus,
                       const TrainConfig& cfg);

}  // namespace rstparse::train
