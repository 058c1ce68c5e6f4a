// rstparse - cross-lingual RST discourse parsing toolkit.
//
// Subcommands: ingest, translate, train, parse, evaluate, analyze, sweep.
// All inter-command data flows through the canonical JSONL corpus format.
// Exit codes: 0 success, 1 data/runtime error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rstparse/analysis/lda.hpp"
#include "rstparse/analysis/projection.hpp"
#include "rstparse/analysis/scatter.hpp"
#include "rstparse/errors.hpp"
#include "rstparse/eval/mfs.hpp"
#include "rstparse/eval/scores.hpp"
#include "rstparse/model/checkpoint.hpp"
#include "rstparse/oracle/trace.hpp"
#include "rstparse/train/sweep.hpp"
#include "rstparse/train/trainer.hpp"
#include "rstparse/translation/http_client.hpp"
#include "rstparse/translation/pipeline.hpp"
#include "rstparse/treebank/corpus_io.hpp"
#include "rstparse/treebank/dis_reader.hpp"
#include "rstparse/treebank/preprocess.hpp"
#include "rstparse/treebank/rs3_reader.hpp"
#include "rstparse/treebank/split.hpp"
#include "rstparse/treebank/tokenize.hpp"
#include "rstparse/util/strings.hpp"

namespace fs = std::filesystem;
using namespace rstparse;

namespace {

// ---------------------------------------------------------------------- //
// shared option structs

struct HyperOpts {
  train::TrainConfig cfg;
  std::string config_file;
  std::string regime = "multi";  // "en" restricts training data to English

  void register_flags(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "flat key = value config file");
    cmd->add_option("--d-emb", cfg.hp.d_emb, "embedding dimension");
    cmd->add_option("--d-hidden", cfg.hp.d_hidden, "hidden dimension");
    cmd->add_option("--window", cfg.hp.window, "sliding window size (tokens)");
    cmd->add_option("--stride", cfg.hp.stride, "sliding window stride (tokens)");
    cmd->add_option("--dropout", cfg.hp.dropout, "dropout rate");
    cmd->add_option("--lr", cfg.hp.lr, "learning rate");
    cmd->add_option("--weight-decay", cfg.hp.weight_decay, "L2 strength (lambda)");
    cmd->add_option("--batch-size", cfg.hp.batch_size, "mini-batch size");
    cmd->add_option("--epochs", cfg.hp.epochs, "training epochs");
    cmd->add_option("--gru-layers", cfg.hp.gru_layers, "encoder Bi-GRU layers");
    cmd->add_option("--valid-fraction", cfg.validation_fraction,
                    "per-language validation carve when no --valid is given");
    cmd->add_option("--clip-norm", cfg.clip_norm, "global gradient-norm clip");
    cmd->add_option("--regime", regime, "training regime: en | multi")
        ->check(CLI::IsMember({"en", "multi"}));
  }

  // Config file first, then CLI flags override (CLI11 already parsed them,
  // so only apply keys whose flag was not given).
  void apply_config(CLI::App* cmd) {
    if (config_file.empty()) return;
    auto kv = util::read_kv_file(config_file);
    auto set_int = [&](const char* key, const char* flag, int& slot) {
      if (kv.count(key) && cmd->count(flag) == 0) slot = std::stoi(kv.at(key));
    };
    auto set_double = [&](const char* key, const char* flag, double& slot) {
      if (kv.count(key) && cmd->count(flag) == 0) slot = std::stod(kv.at(key));
    };
    set_int("d_emb", "--d-emb", cfg.hp.d_emb);
    set_int("d_hidden", "--d-hidden", cfg.hp.d_hidden);
    set_int("window", "--window", cfg.hp.window);
    set_int("stride", "--stride", cfg.hp.stride);
    set_double("dropout", "--dropout", cfg.hp.dropout);
    set_double("lr", "--lr", cfg.hp.lr);
    set_double("weight_decay", "--weight-decay", cfg.hp.weight_decay);
    set_int("batch_size", "--batch-size", cfg.hp.batch_size);
    set_int("epochs", "--epochs", cfg.hp.epochs);
    set_int("gru_layers", "--gru-layers", cfg.hp.gru_layers);
    set_double("valid_fraction", "--valid-fraction", cfg.validation_fraction);
    set_double("clip_norm", "--clip-norm", cfg.clip_norm);
    if (kv.count("regime") && cmd->count("--regime") == 0) regime = kv.at("regime");
  }

  Corpus filter_regime(const Corpus& corpus) const {
    if (regime != "en") return copy_corpus(corpus);
    Corpus out;
    for (const auto& d : corpus)
      if (d.doc.lang == "en") out.push_back(d.copy());
    if (out.empty()) throw ConfigError("regime 'en' selected but corpus has no English documents");
    return out;
  }
};

struct ClientOpts {
  std::string client = "identity";
  std::string dict_file;
  std::string endpoint;
  std::string credential_env = "RSTPARSE_MT_API_KEY";
  std::string cache_file;
  int parallelism = 1;
  int retries = 3;
  double rate_capacity = 4.0;
  double rate_per_sec = 2.0;

  void register_flags(CLI::App* cmd) {
    cmd->add_option("--client", client, "identity | dictionary | http")
        ->check(CLI::IsMember({"identity", "dictionary", "http"}));
    cmd->add_option("--dict", dict_file, "dictionary file for --client dictionary");
    cmd->add_option("--endpoint", endpoint, "translation service URL for --client http");
    cmd->add_option("--credential-env", credential_env,
                    "environment variable holding the API credential");
    cmd->add_option("--cache", cache_file, "translation cache file (append-only JSONL)");
    cmd->add_option("--parallelism", parallelism, "concurrent document requests");
    cmd->add_option("--retries", retries, "attempts for the http client");
    cmd->add_option("--rate-capacity", rate_capacity, "token bucket capacity");
    cmd->add_option("--rate-per-sec", rate_per_sec, "token bucket refill rate");
  }

  std::shared_ptr<translation::TranslationClient> build() const {
    if (client == "identity") return std::make_shared<translation::IdentityClient>();
    if (client == "dictionary") {
      if (dict_file.empty()) throw ConfigError("--client dictionary requires --dict");
      return std::make_shared<translation::DictionaryClient>(
          translation::DictionaryClient::from_file(dict_file));
    }
    if (endpoint.empty()) throw ConfigError("--client http requires --endpoint");
    auto http = std::make_shared<translation::HttpTranslationClient>(endpoint, credential_env);
    auto limited = std::make_shared<translation::RateLimitedClient>(
        http, translation::RateLimit{rate_capacity, rate_per_sec});
    translation::RetryPolicy policy;
    policy.max_attempts = retries;
    return std::make_shared<translation::RetryingClient>(limited, policy);
  }
};

// ---------------------------------------------------------------------- //
// ingest

std::string infer_from_parent(const fs::path& file) {
  std::string parent = file.parent_path().filename().string();
  return parent;
}

int cmd_ingest(const std::string& format, const std::string& in_path,
               const std::string& out_path, const std::string& relmap_path,
               const std::string& lang_flag, const std::string& treebank_flag,
               const std::string& test_out, int split_test, std::uint64_t split_seed) {
  treebank::RelationMap relmap = relmap_path.empty()
                                     ? treebank::RelationMap::default_inventory()
                                     : treebank::RelationMap::load(relmap_path);

  std::vector<fs::path> files;
  const std::string ext = "." + format;
  if (fs::is_directory(in_path)) {
    for (const auto& entry : fs::recursive_directory_iterator(in_path))
      if (entry.is_regular_file() && entry.path().extension() == ext)
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else if (fs::exists(in_path)) {
    files.push_back(in_path);
  } else {
    throw IoError("input path does not exist: " + in_path);
  }
  if (files.empty()) throw IoError("no " + ext + " files under " + in_path);

  Corpus corpus;
  std::vector<std::string> errors;
  for (const auto& file : files) {
    try {
      std::ifstream in(file);
      if (!in) throw IoError("cannot open " + file.string());
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

      if (format == "jsonl") {
        std::istringstream ss(text);
        Corpus part = treebank::read_corpus_jsonl(ss, file.string());
        for (auto& d : part) corpus.push_back(std::move(d));
        continue;
      }

      treebank::RawTree raw =
          format == "dis" ? treebank::parse_dis(text) : treebank::parse_rs3(text);
      raw = treebank::remove_unlinked(raw);
      auto tree = treebank::binarize(raw);

      AnnotatedDoc doc;
      doc.doc.doc_id = file.stem().string();
      std::string parent = infer_from_parent(file);
      doc.doc.lang = !lang_flag.empty() ? lang_flag : (parent.size() == 2 ? parent : "en");
      doc.doc.source_treebank = !treebank_flag.empty() ? treebank_flag : parent;

      auto texts = treebank::collect_edu_texts(raw);
      for (size_t i = 0; i < texts.size(); ++i) {
        Edu e;
        e.index = static_cast<int>(i) + 1;
        e.text = texts[i];
        doc.doc.edus.push_back(std::move(e));
      }
      treebank::retokenize(doc.doc);
      doc.tree = treebank::harmonize(*tree, relmap, doc.doc.source_treebank);
      validate_tree(*doc.tree);
      corpus.push_back(std::move(doc));
    } catch (const Error& e) {
      errors.push_back(file.string() + ": " + e.what());
    }
  }

  if (!test_out.empty()) {
    auto split = treebank::split_dataset(corpus, split_seed, split_test);
    treebank::write_corpus_jsonl(split.train, out_path);
    treebank::write_corpus_jsonl(split.test, test_out);
    std::cerr << "ingested " << corpus.size() << " documents -> " << split.train.size()
              << " train (" << out_path << "), " << split.test.size() << " test (" << test_out
              << ")\n";
  } else {
    treebank::write_corpus_jsonl(corpus, out_path);
    std::cerr << "ingested " << corpus.size() << " documents -> " << out_path << "\n";
  }
  if (!errors.empty()) {
    std::cerr << errors.size() << " files failed:\n";
    for (const auto& e : errors) std::cerr << "  " << e << "\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------- //
// translate

int cmd_translate(const std::string& in_path, const std::string& out_path,
                  const std::string& target, const ClientOpts& opts) {
  Corpus corpus = treebank::read_corpus_jsonl(in_path);
  auto client = opts.build();
  translation::TranslationCache cache(opts.cache_file);
  auto result =
      translation::translate_corpus(corpus, target, *client, cache, opts.parallelism);
  treebank::write_corpus_jsonl(result.corpus, out_path);
  std::cerr << "translated " << result.corpus.size() << "/" << corpus.size()
            << " documents -> " << out_path << "\n";
  if (!result.failures.empty()) {
    std::cerr << result.failures.size() << " documents failed:\n";
    for (const auto& f : result.failures) std::cerr << "  " << f.doc_id << ": " << f.error << "\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------- //
// train / sweep

Corpus maybe_translate(const Corpus& corpus, const std::string& strategy,
                       const std::string& target, const ClientOpts& client_opts) {
  if (strategy != "segment-translation") return copy_corpus(corpus);
  if (target.empty())
    throw ConfigError("strategy segment-translation requires --target-lang");
  auto client = client_opts.build();
  translation::TranslationCache cache(client_opts.cache_file);
  auto result = translation::translate_corpus(corpus, target, *client, cache,
                                              client_opts.parallelism);
  if (!result.failures.empty())
    throw ClientError(std::to_string(result.failures.size()) +
                      " documents failed to translate; aborting training");
  return std::move(result.corpus);
}

int cmd_train(const std::string& train_path, const std::string& valid_path,
              const std::string& run_dir, HyperOpts& hyper, std::uint64_t seed,
              const std::string& strategy, const std::string& target,
              const ClientOpts& client_opts) {
  Corpus train_corpus = hyper.filter_regime(treebank::read_corpus_jsonl(train_path));
  train_corpus = maybe_translate(train_corpus, strategy, target, client_opts);

  Corpus valid_corpus;
  if (!valid_path.empty()) {
    valid_corpus = treebank::read_corpus_jsonl(valid_path);
    valid_corpus = maybe_translate(valid_corpus, strategy, target, client_opts);
  }

  hyper.cfg.run_dir = run_dir;
  auto result = train::train(train_corpus, valid_corpus, hyper.cfg, seed);
  std::cerr << "best epoch " << result.record.best_epoch << " (metric "
            << result.record.best_metric << "), checkpoint: "
            << result.record.checkpoint_path << "\n";
  return 0;
}

int cmd_sweep(const std::string& train_path, const std::string& test_path,
              const std::string& run_dir, HyperOpts& hyper, const std::string& seeds_csv,
              const std::string& strategy, const std::string& target,
              const ClientOpts& client_opts) {
  Corpus train_corpus = hyper.filter_regime(treebank::read_corpus_jsonl(train_path));
  Corpus test_corpus = treebank::read_corpus_jsonl(test_path);
  train_corpus = maybe_translate(train_corpus, strategy, target, client_opts);
  test_corpus = maybe_translate(test_corpus, strategy, target, client_opts);

  hyper.cfg.run_dir = run_dir;
  hyper.cfg.seeds.clear();
  for (const auto& s : util::split(seeds_csv, ','))
    if (!util::trim(s).empty()) hyper.cfg.seeds.push_back(std::stoull(util::trim(s)));

  auto result = train::seed_sweep(train_corpus, test_corpus, hyper.cfg);
  std::string json_text = train::sweep_to_json(result);
  if (!run_dir.empty()) {
    fs::create_directories(run_dir);
    std::ofstream out(fs::path(run_dir) / "sweep.json");
    out << json_text << "\n";
  }
  std::cout << "mean over " << (result.runs.size() - static_cast<size_t>(result.failures))
            << " runs:\n"
            << eval::report_to_text(result.mean);
  if (result.failures > 0) {
    std::cerr << result.failures << " runs failed\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------- //
// parse / evaluate

int cmd_parse(const std::string& ckpt_path, const std::string& in_path,
              const std::string& out_path, const std::string& trace_out) {
  auto model = model::load_checkpoint(ckpt_path);

  std::ifstream in(in_path);
  if (!in) throw IoError("cannot open corpus: " + in_path);
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open for writing: " + out_path);
  std::ofstream traces;
  if (!trace_out.empty()) {
    traces.open(trace_out);
    if (!traces) throw IoError("cannot open for writing: " + trace_out);
  }

  std::string line;
  int lineno = 0, parsed = 0, skipped = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      AnnotatedDoc doc = treebank::doc_from_json(line);
      doc.tree = model->parse(doc.doc);
      out << treebank::doc_to_json(doc) << "\n";
      if (traces.is_open()) {
        traces << "# " << doc.doc.doc_id << "\n"
               << oracle::trace_to_text(oracle::tree_to_trace(*doc.tree, doc.doc.doc_id));
      }
      ++parsed;
    } catch (const Error& e) {
      std::cerr << "warning: skipping " << in_path << ":" << lineno << ": " << e.what() << "\n";
      ++skipped;
    }
  }
  std::cerr << "parsed " << parsed << " documents (" << skipped << " skipped) -> " << out_path
            << "\n";
  return 0;
}

int cmd_evaluate(const std::string& gold_path, const std::string& pred_path,
                 const std::string& out_path, bool include_root, bool macro_per_class,
                 bool with_mfs) {
  Corpus gold = treebank::read_corpus_jsonl(gold_path);
  Corpus pred = treebank::read_corpus_jsonl(pred_path);
  eval::ScoringOptions opt;
  opt.include_root = include_root;
  opt.macro_per_class = macro_per_class;
  eval::ScoreReport report = eval::score_corpora(gold, pred, opt);
  std::cout << eval::report_to_text(report);

  if (with_mfs) {
    Corpus mfs_pred;
    for (const auto& d : gold) mfs_pred.push_back({d.doc, eval::mfs_baseline(gold, d.doc)});
    eval::ScoreReport mfs_report = eval::score_corpora(gold, mfs_pred, opt);
    std::cout << "MFS baseline:\n" << eval::report_to_text(mfs_report);
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write report: " + out_path);
    out << eval::report_to_json(report) << "\n";
    std::cerr << "report -> " << out_path << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------- //
// analyze

int cmd_analyze(const std::string& in_path, int k, int iterations, const std::string& method,
                const std::string& out_path, const std::string& json_path, std::uint64_t seed,
                int min_freq, int keywords, const std::string& stopwords_path) {
  Corpus corpus = treebank::read_corpus_jsonl(in_path);
  analysis::PrepOptions prep;
  prep.min_corpus_frequency = min_freq;
  if (!stopwords_path.empty()) {
    std::ifstream in(stopwords_path);
    if (!in) throw IoError("cannot open stop-word list: " + stopwords_path);
    std::string word;
    while (in >> word)
      if (!word.empty() && word[0] != '#') prep.extra_stopwords.insert(word);
  }
  analysis::BagOfWords bow = analysis::prepare_corpus(corpus, prep);

  analysis::LdaOptions lda_opt;
  lda_opt.topics = k;
  lda_opt.iterations = iterations;
  analysis::TopicModel model = analysis::fit_lda(bow, lda_opt, seed);

  std::vector<std::vector<std::string>> topic_keywords;
  for (int t = 0; t < k; ++t) topic_keywords.push_back(analysis::top_keywords(model, t, keywords));

  auto points =
      analysis::project_2d(model, analysis::projection_from_string(method), seed);
  analysis::emit_scatter(points, topic_keywords, out_path);
  std::cerr << "scatter plot -> " << out_path << "\n";

  if (!json_path.empty()) {
    nlohmann::json j;
    nlohmann::json topics = nlohmann::json::array();
    for (int t = 0; t < k; ++t) topics.push_back({{"topic", t}, {"keywords", topic_keywords[static_cast<size_t>(t)]}});
    j["topics"] = std::move(topics);
    nlohmann::json docs = nlohmann::json::array();
    for (size_t i = 0; i < points.size(); ++i) {
      std::vector<double> theta(model.theta.cols());
      for (Eigen::Index c = 0; c < model.theta.cols(); ++c)
        theta[static_cast<size_t>(c)] = model.theta(static_cast<Eigen::Index>(i), c);
      docs.push_back({{"doc_id", points[i].doc_id},
                      {"treebank", points[i].label},
                      {"theta", theta},
                      {"x", points[i].x},
                      {"y", points[i].y}});
    }
    j["documents"] = std::move(docs);
    std::ofstream out(json_path);
    if (!out) throw IoError("cannot write " + json_path);
    out << j.dump(2) << "\n";
    std::cerr << "topic data -> " << json_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rstparse - cross-lingual RST discourse parsing toolkit"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "read native treebank formats into JSONL");
  std::string ing_format, ing_in, ing_out, ing_relmap, ing_lang, ing_treebank, ing_test_out;
  int ing_split_test = 38;
  std::uint64_t ing_split_seed = 1;
  ingest->add_option("--format", ing_format, "dis | rs3 | jsonl")
      ->required()
      ->check(CLI::IsMember({"dis", "rs3", "jsonl"}));
  ingest->add_option("--in", ing_in, "input directory or file")->required();
  ingest->add_option("--out", ing_out, "output corpus (JSONL)")->required();
  ingest->add_option("--relmap", ing_relmap, "relation map data file");
  ingest->add_option("--lang", ing_lang, "ISO 639-1 code for all documents");
  ingest->add_option("--treebank", ing_treebank, "source treebank name");
  ingest->add_option("--test-out", ing_test_out,
                     "also write a per-language random test split to this file");
  ingest->add_option("--split-test", ing_split_test, "test documents per language");
  ingest->add_option("--split-seed", ing_split_seed, "seed for the split");

  // translate
  auto* translate = app.add_subcommand("translate", "EDU segment-level corpus translation");
  std::string tr_in, tr_out, tr_target;
  ClientOpts tr_client;
  translate->add_option("--in", tr_in)->required();
  translate->add_option("--out", tr_out)->required();
  translate->add_option("--target", tr_target, "target language code")->required();
  tr_client.register_flags(translate);

  // train
  auto* train_cmd = app.add_subcommand("train", "train the neural parser");
  std::string tn_train, tn_valid, tn_run = "run";
  std::uint64_t tn_seed = 1;
  std::string tn_strategy = "cross-lingual-representation", tn_target;
  HyperOpts tn_hyper;
  ClientOpts tn_client;
  train_cmd->add_option("--train", tn_train, "training corpus (JSONL)")->required();
  train_cmd->add_option("--valid", tn_valid, "validation corpus (JSONL)");
  train_cmd->add_option("--run-dir", tn_run, "output directory");
  train_cmd->add_option("--seed", tn_seed, "RNG seed");
  train_cmd->add_option("--strategy", tn_strategy,
                        "cross-lingual-representation | segment-translation")
      ->check(CLI::IsMember({"cross-lingual-representation", "segment-translation"}));
  train_cmd->add_option("--target-lang", tn_target, "target language for segment-translation");
  tn_hyper.register_flags(train_cmd);
  tn_client.register_flags(train_cmd);

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "parse a corpus with a trained checkpoint");
  std::string ps_ckpt, ps_in, ps_out, ps_traces;
  parse_cmd->add_option("--checkpoint", ps_ckpt)->required();
  parse_cmd->add_option("--in", ps_in)->required();
  parse_cmd->add_option("--out", ps_out)->required();
  parse_cmd->add_option("--trace-out", ps_traces,
                        "dump predicted split traces (one 'i j k REL-NUC' line per step)");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "score predictions against gold trees");
  std::string ev_gold, ev_pred, ev_out = "report.json";
  bool ev_no_root = false, ev_per_class = false, ev_mfs = false;
  eval_cmd->add_option("--gold", ev_gold)->required();
  eval_cmd->add_option("--pred", ev_pred)->required();
  eval_cmd->add_option("--out", ev_out, "JSON report path");
  eval_cmd->add_flag("--exclude-root", ev_no_root, "drop the root span from scoring");
  eval_cmd->add_flag("--macro-per-class", ev_per_class,
                     "macro-average Rel over relation classes instead of documents");
  eval_cmd->add_flag("--mfs", ev_mfs, "also print the MFS baseline scores");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "LDA topics and 2-D projection of a corpus");
  std::string an_in, an_method = "tsne", an_out = "topics.svg", an_json = "topics.json";
  std::string an_stopwords;
  int an_k = 5, an_iters = 1000, an_minfreq = 3, an_keywords = 8;
  std::uint64_t an_seed = 1;
  analyze->add_option("--in", an_in)->required();
  analyze->add_option("--k", an_k, "topic count");
  analyze->add_option("--iterations", an_iters, "Gibbs sweeps");
  analyze->add_option("--project", an_method, "tsne | pca")
      ->check(CLI::IsMember({"tsne", "pca"}));
  analyze->add_option("--out", an_out, "SVG scatter path");
  analyze->add_option("--json", an_json, "topic data JSON path");
  analyze->add_option("--seed", an_seed);
  analyze->add_option("--min-freq", an_minfreq, "drop words rarer than this");
  analyze->add_option("--keywords", an_keywords, "keywords per topic");
  analyze->add_option("--stopwords", an_stopwords, "extra stop-word list file");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "train with several seeds and average the scores");
  std::string sw_train, sw_test, sw_run = "sweep", sw_seeds = "1,2,3";
  std::string sw_strategy = "cross-lingual-representation", sw_target;
  HyperOpts sw_hyper;
  ClientOpts sw_client;
  sweep->add_option("--train", sw_train)->required();
  sweep->add_option("--test", sw_test)->required();
  sweep->add_option("--run-dir", sw_run);
  sweep->add_option("--seeds", sw_seeds, "comma-separated seed list");
  sweep->add_option("--strategy", sw_strategy,
                    "cross-lingual-representation | segment-translation")
      ->check(CLI::IsMember({"cross-lingual-representation", "segment-translation"}));
  sweep->add_option("--target-lang", sw_target);
  sw_hyper.register_flags(sweep);
  sw_client.register_flags(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*ingest)
      return cmd_ingest(ing_format, ing_in, ing_out, ing_relmap, ing_lang, ing_treebank,
                        ing_test_out, ing_split_test, ing_split_seed);
    if (*translate) return cmd_translate(tr_in, tr_out, tr_target, tr_client);
    if (*train_cmd) {
      tn_hyper.apply_config(train_cmd);
      return cmd_train(tn_train, tn_valid, tn_run, tn_hyper, tn_seed, tn_strategy, tn_target,
                       tn_client);
    }
    if (*parse_cmd) return cmd_parse(ps_ckpt, ps_in, ps_out, ps_traces);
    if (*eval_cmd)
      return cmd_evaluate(ev_gold, ev_pred, ev_out, !ev_no_root, ev_per_class, ev_mfs);
    if (*analyze)
      return cmd_analyze(an_in, an_k, an_iters, an_method, an_out, an_json, an_seed, an_minfreq,
                         an_keywords, an_stopwords);
    if (*sweep) {
      sw_hyper.apply_config(sweep);
      return cmd_sweep(sw_train, sw_test, sw_run, sw_hyper, sw_seeds, sw_strategy, sw_target,
                       sw_client);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
