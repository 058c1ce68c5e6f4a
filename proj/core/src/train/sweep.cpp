#include "rstparse/train/sweep.hpp"

#include <filesystem>

#include <json.hpp>

namespace rstparse::train {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Corpus parse_corpus(model::ParserModel& model, const Corpus& docs) {
  Corpus out;
  for (const auto& d : docs) out.push_back({d.doc, model.parse(d.doc)});
  return out;
}

void accumulate(eval::ScoreBlock& acc, const eval::ScoreBlock& b) {
  acc.macro.sp += b.macro.sp;
  acc.macro.nu += b.macro.nu;
  acc.macro.rel += b.macro.rel;
  acc.micro.sp += b.micro.sp;
  acc.micro.nu += b.micro.nu;
  acc.micro.rel += b.micro.rel;
  acc.documents = b.documents;
}

void scale(eval::ScoreBlock& b, double inv) {
  b.macro.sp *= inv;
  b.macro.nu *= inv;
  b.macro.rel *= inv;
  b.micro.sp *= inv;
  b.micro.nu *= inv;
  b.micro.rel *= inv;
}

}  // namespace

SweepResult seed_sweep(const Corpus& train_corpus, const Corpus& test_corpus,
                       const TrainConfig& cfg) {
  if (cfg.seeds.empty()) throw ConfigError("seed sweep needs at least one seed");

  SweepResult result;
  int ok = 0;
  for (std::uint64_t seed : cfg.seeds) {
    SweepRun run;
    run.seed = seed;
    try {
      TrainConfig per_seed = cfg;
      if (!cfg.run_dir.empty())
        per_seed.run_dir = (fs::path(cfg.run_dir) / ("seed-" + std::to_string(seed))).string();
      TrainResult trained = train(train_corpus, {}, per_seed, seed);
      run.record = trained.record;
      Corpus predictions = parse_corpus(*trained.model, test_corpus);
      run.report = eval::score_corpora(test_corpus, predictions);
      ++ok;
    } catch (const Error& e) {
      run.failed = true;
      run.error = e.what();
      ++result.failures;
    }
    result.runs.push_back(std::move(run));
  }

  if (ok > 0) {
    for (const auto& run : result.runs) {
      if (run.failed) continue;
      accumulate(result.mean.pooled, run.report.pooled);
      for (const auto& [lang, block] : run.report.per_language)
        accumulate(result.mean.per_language[lang], block);
    }
    double inv = 1.0 / static_cast<double>(ok);
    scale(result.mean.pooled, inv);
    for (auto& [lang, block] : result.mean.per_language) scale(block, inv);
  }
  return result;
}

std::string sweep_to_json(const SweepResult& result) {
  json j;
  json runs = json::array();
  for (const auto& run : result.runs) {
    json r;
    r["seed"] = run.seed;
    r["failed"] = run.failed;
    if (run.failed)
      r["error"] = run.error;
    else
      r["report"] = json::parse(eval::report_to_json(run.report));
    runs.push_back(std::move(r));
  }
  j["runs"] = std::move(runs);
  j["failures"] = result.failures;
  if (result.failures < static_cast<int>(result.runs.size()))
    j["mean"] = json::parse(eval::report_to_json(result.mean));
  return j.dump(2);
}

}  // namespace rstparse::train
