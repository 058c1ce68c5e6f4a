#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "rstparse/analysis/lda.hpp"
#include "rstparse/analysis/projection.hpp"
#include "rstparse/analysis/scatter.hpp"
#include "rstparse/analysis/text_prep.hpp"
#include "support.hpp"

using namespace rstparse;
using namespace rstparse::analysis;

namespace {

// Two disjoint vocabularies; document d draws all tokens from one of them.
Corpus planted_corpus(Rng& rng, int docs, int words_per_doc) {
  std::vector<std::string> topic_a = {"market",  "shares", "profit", "bank",
                                      "quarter", "stock",  "trade",  "price"};
  std::vector<std::string> topic_b = {"enzyme", "protein", "cell",   "tissue",
                                      "genome", "plasma",  "neuron", "membrane"};
  Corpus corpus;
  for (int d = 0; d < docs; ++d) {
    bool is_a = d % 2 == 0;
    const auto& vocab = is_a ? topic_a : topic_b;
    AnnotatedDoc ad;
    ad.doc.doc_id = "p" + std::to_string(d);
    ad.doc.lang = "en";
    ad.doc.source_treebank = is_a ? "bank-A" : "bank-B";
    std::string text;
    for (int w = 0; w < words_per_doc; ++w) {
      if (w) text += ' ';
      text += vocab[rng.index(vocab.size())];
    }
    ad.doc.edus.push_back({1, text, {}});
    treebank::retokenize(ad.doc);
    ad.tree = RstTree::make_leaf(1);
    corpus.push_back(std::move(ad));
  }
  return corpus;
}

double planted_purity(const TopicModel& model) {
  // Assign each document to its argmax topic; purity of the dominant
  // planted label per topic.
  std::map<int, std::map<std::string, int>> clusters;
  for (Eigen::Index d = 0; d < model.theta.rows(); ++d) {
    Eigen::Index topic;
    model.theta.row(d).maxCoeff(&topic);
    ++clusters[static_cast<int>(topic)][model.doc_labels[static_cast<size_t>(d)]];
  }
  int dominant = 0, total = 0;
  for (const auto& [topic, counts] : clusters) {
    int best = 0;
    for (const auto& [label, n] : counts) {
      best = std::max(best, n);
      total += n;
    }
    dominant += best;
  }
  return total ? static_cast<double>(dominant) / total : 0.0;
}

}  // namespace

TEST_CASE("text prep: lowercase, punctuation stripped, stopwords and rare words dropped") {
  Corpus corpus;
  for (int d = 0; d < 3; ++d) {
    AnnotatedDoc ad;
    ad.doc.doc_id = "d" + std::to_string(d);
    ad.doc.lang = "en";
    ad.doc.edus.push_back({1, "The Market, the MARKET; and biz" + std::to_string(d), {}});
    treebank::retokenize(ad.doc);
    ad.tree = RstTree::make_leaf(1);
    corpus.push_back(std::move(ad));
  }
  PrepOptions opt;
  opt.min_corpus_frequency = 3;
  BagOfWords bow = prepare_corpus(corpus, opt);
  // "the"/"and" are stopwords, "bizN" appears once each -> only "market".
  REQUIRE(bow.vocab.size() == 1);
  CHECK(bow.vocab[0] == "market");
  CHECK(bow.docs[0].size() == 2);
}

TEST_CASE("empty vocabulary raises AnalysisError") {
  Corpus corpus;
  AnnotatedDoc ad;
  ad.doc.doc_id = "d";
  ad.doc.lang = "en";
  ad.doc.edus.push_back({1, "the and of", {}});
  treebank::retokenize(ad.doc);
  ad.tree = RstTree::make_leaf(1);
  corpus.push_back(std::move(ad));
  CHECK_THROWS_AS(prepare_corpus(corpus, {}), AnalysisError);
}

TEST_CASE("planted two-topic corpus is recovered with purity above 0.9") {
  Rng rng(640);
  Corpus corpus = planted_corpus(rng, 100, 30);
  BagOfWords bow = prepare_corpus(corpus, {});
  LdaOptions opt;
  opt.topics = 2;
  opt.iterations = 300;
  TopicModel model = fit_lda(bow, opt, 7);
  CHECK(planted_purity(model) > 0.9);

  // All distributions normalized within 1e-9.
  for (int k = 0; k < 2; ++k)
    CHECK(std::abs(model.phi.row(k).sum() - 1.0) < 1e-9);
  for (Eigen::Index d = 0; d < model.theta.rows(); ++d) {
    CHECK(std::abs(model.theta.row(d).sum() - 1.0) < 1e-9);
    CHECK(model.theta.row(d).minCoeff() >= 0.0);
  }
}

TEST_CASE("top keywords come from the planted vocabulary") {
  Rng rng(641);
  Corpus corpus = planted_corpus(rng, 60, 25);
  BagOfWords bow = prepare_corpus(corpus, {});
  LdaOptions opt;
  opt.topics = 2;
  opt.iterations = 200;
  TopicModel model = fit_lda(bow, opt, 11);

  std::set<std::string> topic_a = {"market",  "shares", "profit", "bank",
                                   "quarter", "stock",  "trade",  "price"};
  for (int k = 0; k < 2; ++k) {
    auto words = top_keywords(model, k, 5);
    REQUIRE(words.size() == 5);
    // a topic's top words are either all finance or all biology terms
    bool all_a = true, all_b = true;
    for (const auto& w : words) {
      if (!topic_a.count(w)) all_a = false;
      if (topic_a.count(w)) all_b = false;
    }
    CHECK((all_a || all_b));
  }
  CHECK(top_keywords(model, 0, 0).empty());
  // n beyond the vocabulary truncates
  CHECK(top_keywords(model, 0, 10000).size() == bow.vocab.size());
}

TEST_CASE("k=1 gives every document theta = [1.0]") {
  Rng rng(642);
  Corpus corpus = planted_corpus(rng, 10, 15);
  BagOfWords bow = prepare_corpus(corpus, {});
  LdaOptions opt;
  opt.topics = 1;
  opt.iterations = 10;
  TopicModel model = fit_lda(bow, opt, 3);
  for (Eigen::Index d = 0; d < model.theta.rows(); ++d)
    CHECK(model.theta(d, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("same seed reproduces phi and theta bit-exactly") {
  Rng rng(643);
  Corpus corpus = planted_corpus(rng, 30, 20);
  BagOfWords bow = prepare_corpus(corpus, {});
  LdaOptions opt;
  opt.topics = 3;
  opt.iterations = 50;
  TopicModel m1 = fit_lda(bow, opt, 123);
  TopicModel m2 = fit_lda(bow, opt, 123);
  CHECK((m1.phi - m2.phi).cwiseAbs().maxCoeff() == 0.0);
  CHECK((m1.theta - m2.theta).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("identical theta rows project to near-coincident points under pca") {
  TopicModel model;
  model.theta = Eigen::MatrixXd::Zero(5, 3);
  for (int d = 0; d < 5; ++d) model.theta(d, 1) = 1.0;
  model.phi = Eigen::MatrixXd::Constant(3, 2, 0.5);
  model.vocab = {"a", "b"};
  for (int d = 0; d < 5; ++d) {
    model.doc_ids.push_back("d" + std::to_string(d));
    model.doc_labels.push_back("t");
  }
  auto points = project_2d(model, ProjectionMethod::Pca, 1);
  for (size_t i = 1; i < points.size(); ++i) {
    CHECK(std::abs(points[i].x - points[0].x) < 1e-9);
    CHECK(std::abs(points[i].y - points[0].y) < 1e-9);
  }
}

TEST_CASE("planted clusters separate in 2-D under both methods") {
  Rng rng(644);
  Corpus corpus = planted_corpus(rng, 40, 25);
  BagOfWords bow = prepare_corpus(corpus, {});
  LdaOptions opt;
  opt.topics = 2;
  opt.iterations = 200;
  TopicModel model = fit_lda(bow, opt, 17);

  for (auto method : {ProjectionMethod::Pca, ProjectionMethod::Tsne}) {
    auto points = project_2d(model, method, 5);
    // silhouette on the two planted labels
    auto dist = [&](const ProjectedPoint& a, const ProjectedPoint& b) {
      return std::hypot(a.x - b.x, a.y - b.y);
    };
    double silhouette = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
      double same = 0.0, other = 0.0;
      int same_n = 0, other_n = 0;
      for (size_t j = 0; j < points.size(); ++j) {
        if (i == j) continue;
        if (points[j].label == points[i].label) {
          same += dist(points[i], points[j]);
          ++same_n;
        } else {
          other += dist(points[i], points[j]);
          ++other_n;
        }
      }
      double a = same / same_n, b = other / other_n;
      silhouette += (b - a) / std::max(a, b);
    }
    silhouette /= static_cast<double>(points.size());
    CHECK(silhouette > 0.5);
  }
}

TEST_CASE("pca projection is exactly reproducible") {
  Rng rng(645);
  Corpus corpus = planted_corpus(rng, 20, 15);
  BagOfWords bow = prepare_corpus(corpus, {});
  LdaOptions opt;
  opt.topics = 2;
  opt.iterations = 60;
  TopicModel model = fit_lda(bow, opt, 19);
  auto p1 = project_2d(model, ProjectionMethod::Pca, 5);
  auto p2 = project_2d(model, ProjectionMethod::Pca, 99);  // pca ignores the seed
  REQUIRE(p1.size() == p2.size());
  for (size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].x == p2[i].x);
    CHECK(p1[i].y == p2[i].y);
  }
}

TEST_CASE("tsne is deterministic for a fixed seed") {
  Rng rng(646);
  Corpus corpus = planted_corpus(rng, 15, 15);
  BagOfWords bow = prepare_corpus(corpus, {});
  LdaOptions opt;
  opt.topics = 2;
  opt.iterations = 60;
  TopicModel model = fit_lda(bow, opt, 23);
  TsneOptions topt;
  topt.iterations = 200;
  auto p1 = project_2d(model, ProjectionMethod::Tsne, 5, topt);
  auto p2 = project_2d(model, ProjectionMethod::Tsne, 5, topt);
  for (size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].x == p2[i].x);
    CHECK(p1[i].y == p2[i].y);
  }
}

TEST_CASE("fewer than 3 documents cannot be projected") {
  TopicModel model;
  model.theta = Eigen::MatrixXd::Constant(2, 2, 0.5);
  model.doc_ids = {"a", "b"};
  model.doc_labels = {"x", "y"};
  CHECK_THROWS_AS(project_2d(model, ProjectionMethod::Pca, 1), AnalysisError);
}

TEST_CASE("svg scatter: one circle per point, one legend entry per treebank") {
  std::vector<ProjectedPoint> points;
  points.push_back({"a", "bank-A", 0.0, 0.0});
  points.push_back({"b", "bank-A", 1.0, 0.5});
  points.push_back({"c", "bank-B", -1.0, 0.25});
  std::string svg = scatter_svg(points, {{"market", "price"}, {"cell", "genome"}});

  auto count = [&](const std::string& needle) {
    size_t n = 0, pos = 0;
    while ((pos = svg.find(needle, pos)) != std::string::npos) {
      ++n;
      pos += needle.size();
    }
    return n;
  };
  CHECK(count("class=\"pt\"") == 3);
  CHECK(count("class=\"legend-entry\"") == 2);
  CHECK(count("class=\"topic\"") == 2);
  CHECK(svg.find("market") != std::string::npos);

  // six distinct labels -> six legend entries
  std::vector<ProjectedPoint> six;
  for (int i = 0; i < 6; ++i)
    six.push_back({"d" + std::to_string(i), "bank-" + std::to_string(i),
                   static_cast<double>(i), 0.0});
  std::string svg6 = scatter_svg(six, {});
  size_t n = 0, pos = 0;
  while ((pos = svg6.find("legend-entry", pos)) != std::string::npos) {
    ++n;
    pos += 5;
  }
  CHECK(n == 6);

  CHECK_THROWS_AS(scatter_svg({}, {}), ContractError);
}

TEST_CASE("emit_scatter writes the file") {
  namespace fs = std::filesystem;
  std::string path = (fs::temp_directory_path() / "rstparse_scatter_test.svg").string();
  fs::remove(path);
  std::vector<ProjectedPoint> points{{"a", "t", 0.0, 0.0}, {"b", "t", 1.0, 1.0}};
  emit_scatter(points, {{"k"}}, path);
  CHECK(fs::exists(path));
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content.find("<svg") != std::string::npos);
  fs::remove(path);
}
