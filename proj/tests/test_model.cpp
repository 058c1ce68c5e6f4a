#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rstparse/model/backbone.hpp"
#include "rstparse/model/checkpoint.hpp"
#include "rstparse/model/gru.hpp"
#include "rstparse/model/parser_model.hpp"
#include "support.hpp"

using namespace rstparse;
using namespace rstparse::model;

namespace {

// Backbone whose output depends on position within the window it was given;
// makes the sliding-window merge rule observable.
class PositionBackbone : public EmbeddingBackbone {
 public:
  explicit PositionBackbone(int dim) : dim_(dim) {}
  std::string kind() const override { return "mock-position"; }
  int dim() const override { return dim_; }
  Eigen::MatrixXd encode(std::span<const std::string> tokens) override {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(tokens.size()), dim_);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (int j = 0; j < dim_; ++j)
        out(i, j) = static_cast<double>(i) * 10.0 + j +
                    0.001 * static_cast<double>(tokens.size());
    return out;
  }

 private:
  int dim_;
};

// All-ones backbone: windowed and single-pass must agree trivially.
class ConstantBackbone : public EmbeddingBackbone {
 public:
  explicit ConstantBackbone(int dim) : dim_(dim) {}
  std::string kind() const override { return "mock-const"; }
  int dim() const override { return dim_; }
  Eigen::MatrixXd encode(std::span<const std::string> tokens) override {
    return Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(tokens.size()), dim_);
  }

 private:
  int dim_;
};

Hyperparams toy_hp(int d = 8) {
  Hyperparams hp;
  hp.d_emb = d;
  hp.d_hidden = d;
  hp.window = 500;
  hp.stride = 200;
  hp.dropout = 0.0;
  hp.weight_decay = 0.0;
  hp.gru_layers = 1;
  return hp;
}

std::vector<std::string> words(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("w" + std::to_string(i % 7));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------- //
// sliding windows

TEST_CASE("plan_windows: short inputs use a single window") {
  WindowPlan plan = plan_windows(100, 500, 200);
  REQUIRE(plan.windows.size() == 1);
  CHECK(plan.windows[0] == std::pair<int, int>{0, 100});
}

TEST_CASE("plan_windows: 700 tokens at 500/200 gives [0,500) and [200,700)") {
  WindowPlan plan = plan_windows(700, 500, 200);
  REQUIRE(plan.windows.size() == 2);
  CHECK(plan.windows[0] == std::pair<int, int>{0, 500});
  CHECK(plan.windows[1] == std::pair<int, int>{200, 700});
  for (int p = 0; p < 700; ++p) {
    int expect = (p >= 200 && p < 500) ? 2 : 1;
    CHECK(plan.coverage[static_cast<size_t>(p)] == expect);
  }
}

TEST_CASE("windowed encoding is bit-identical to single pass at <= window") {
  PositionBackbone backbone(3);
  auto toks = words(500);
  Eigen::MatrixXd merged =
      encode_tokens_windowed(backbone, std::span<const std::string>(toks), 500, 200);
  Eigen::MatrixXd direct = backbone.encode(std::span<const std::string>(toks));
  CHECK((merged - direct).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("window overlap takes the arithmetic mean of the two windows") {
  PositionBackbone backbone(2);
  auto toks = words(700);
  Eigen::MatrixXd merged =
      encode_tokens_windowed(backbone, std::span<const std::string>(toks), 500, 200);
  std::span<const std::string> all(toks);
  Eigen::MatrixXd w1 = backbone.encode(all.subspan(0, 500));
  Eigen::MatrixXd w2 = backbone.encode(all.subspan(200, 500));
  for (int p = 0; p < 700; ++p) {
    Eigen::RowVectorXd expect;
    if (p < 200)
      expect = w1.row(p);
    else if (p < 500)
      expect = (w1.row(p) + w2.row(p - 200)) / 2.0;
    else
      expect = w2.row(p - 200);
    CHECK((merged.row(p) - expect).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("constant backbone is unaffected by windowing") {
  ConstantBackbone backbone(4);
  auto toks = words(730);
  Eigen::MatrixXd merged =
      encode_tokens_windowed(backbone, std::span<const std::string>(toks), 500, 200);
  CHECK((merged.array() - 1.0).abs().maxCoeff() < 1e-15);
}

// ---------------------------------------------------------------------- //
// encoder pieces

TEST_CASE("EDU mean of identical token vectors is that vector") {
  Rng rng(4);
  Document doc;
  doc.doc_id = "d";
  doc.lang = "en";
  doc.edus.push_back({1, "same same same", {}});
  doc.edus.push_back({2, "other", {}});
  treebank::retokenize(doc);

  Corpus corpus;
  corpus.push_back({doc, RstTree::make_node(RstTree::make_leaf(1), RstTree::make_leaf(2),
                                            Nuclearity::NS, "Elaboration")});
  auto model = testsup::toy_model(corpus, toy_hp(6), 11);
  auto* toy = dynamic_cast<ToyBackbone*>(&model->backbone());
  REQUIRE(toy != nullptr);

  EncodedDocument enc = model->encode(doc);
  Eigen::RowVectorXd same_row = toy->encode(std::span<const std::string>(doc.tokens)).row(0);
  CHECK((enc.edu_means.row(0) - same_row).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("single-EDU document: boundaries are the first and last token") {
  Rng rng(5);
  Document doc = testsup::random_document(rng, 1, "single");
  Corpus corpus;
  corpus.push_back({doc, RstTree::make_leaf(1)});
  // A labeled document so the joint-label vocabulary is non-empty.
  Corpus labeled = testsup::random_corpus(rng, 1, 2, 3);
  corpus.push_back(std::move(labeled[0]));
  auto model = testsup::toy_model(corpus, toy_hp(4), 3);
  EncodedDocument enc = model->encode(doc);
  REQUIRE(enc.edu_repr.rows() == 1);
  const int H = 4, D = 4;
  CHECK((enc.boundary_in.row(0).segment(2 * H, D).transpose() -
         enc.token_vecs.row(0).transpose())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  CHECK((enc.boundary_in.row(0).segment(2 * H + D, D).transpose() -
         enc.token_vecs.row(doc.token_count() - 1).transpose())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("zero projection with bias b maps every EDU to b") {
  Rng rng(6);
  Document doc = testsup::random_document(rng, 4, "zp");
  Corpus corpus;
  corpus.push_back({doc, testsup::random_binary_tree(rng, 4)});
  auto model = testsup::toy_model(corpus, toy_hp(5), 7);

  Tensor* w_e = model->param_set().find("encoder.w_e");
  Tensor* b_e = model->param_set().find("encoder.b_e");
  REQUIRE(w_e);
  REQUIRE(b_e);
  w_e->value.setZero();
  for (int i = 0; i < 5; ++i) b_e->value(i, 0) = 0.25 * (i + 1);

  EncodedDocument enc = model->encode(doc);
  for (int i = 0; i < 4; ++i)
    CHECK((enc.edu_repr.row(i).transpose() - b_e->value.col(0)).cwiseAbs().maxCoeff() < 1e-15);
}

// ---------------------------------------------------------------------- //
// pointer attention

TEST_CASE("forced split: span (i, i+1) has a single candidate with mass 1") {
  Eigen::MatrixXd e = Eigen::MatrixXd::Random(5, 3);
  Eigen::VectorXd h = Eigen::VectorXd::Random(3);
  Eigen::VectorXd dist = ParserModel::pointer_distribution(h, e, 2, 3);
  REQUIRE(dist.size() == 1);
  CHECK(dist(0) == 1.0);
}

TEST_CASE("orthogonal h gives a uniform pointer distribution") {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(4, 2);
  e(0, 0) = 1.0;
  e(1, 0) = 2.0;
  e(2, 0) = -1.0;
  e(3, 0) = 0.5;
  Eigen::VectorXd h(2);
  h << 0.0, 3.0;  // orthogonal to every row
  Eigen::VectorXd dist = ParserModel::pointer_distribution(h, e, 1, 4);
  REQUIRE(dist.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(dist(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("hand-computed 3-EDU pointer softmax") {
  Eigen::MatrixXd e(3, 2);
  e << 1, 0, 0, 1, 0, 0;
  Eigen::VectorXd h(2);
  h << 2, 0;
  Eigen::VectorXd dist = ParserModel::pointer_distribution(h, e, 1, 3);
  REQUIRE(dist.size() == 2);
  // softmax(2, 0) = (e^2, 1) / (e^2 + 1)
  double z = std::exp(2.0) + 1.0;
  CHECK(dist(0) == doctest::Approx(std::exp(2.0) / z).epsilon(1e-12));
  CHECK(dist(1) == doctest::Approx(1.0 / z).epsilon(1e-12));
  CHECK(dist(0) == doctest::Approx(0.8807970779778823).epsilon(1e-9));
  Eigen::Index k;
  dist.maxCoeff(&k);
  CHECK(k == 0);  // argmax at i
}

TEST_CASE("pointer rejects single-EDU spans") {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(3, 2);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(ParserModel::pointer_distribution(h, e, 2, 2), ContractError);
}

// ---------------------------------------------------------------------- //
// classifier

TEST_CASE("zero classifier weights give the uniform label distribution") {
  Rng rng(8);
  Corpus corpus = testsup::random_corpus(rng, 4, 3, 6);
  auto model = testsup::toy_model(corpus, toy_hp(6), 2);
  int R = model->labels().size();
  for (Tensor* t : model->parameters()) t->value.setZero();
  Eigen::VectorXd probs =
      model->classify(Eigen::VectorXd::Random(6), Eigen::VectorXd::Random(6));
  REQUIRE(probs.size() == R);
  for (int r = 0; r < R; ++r) CHECK(probs(r) == doctest::Approx(1.0 / R).epsilon(1e-12));
}

TEST_CASE("dominant one-hot bias concentrates the label distribution") {
  Rng rng(9);
  Corpus corpus = testsup::random_corpus(rng, 4, 3, 6);
  auto model = testsup::toy_model(corpus, toy_hp(6), 2);
  for (Tensor* t : model->parameters()) t->value.setZero();
  Tensor* b = model->param_set().find("classifier.b");
  REQUIRE(b);
  b->value(1, 0) = 50.0;
  Eigen::VectorXd probs = model->classify(Eigen::VectorXd::Ones(6), Eigen::VectorXd::Ones(6));
  CHECK(probs(1) > 0.999999);
}

TEST_CASE("R=2, d=1 classifier matches a hand-computed softmax") {
  Hyperparams hp = toy_hp(1);
  JointLabelVocab labels;
  labels.add("A", Nuclearity::NS);
  labels.add("B", Nuclearity::NN);
  auto model = std::make_unique<ParserModel>(
      hp, labels, std::make_unique<ToyBackbone>(std::vector<std::string>{"x"}, 1));
  model->init_params(1);

  auto set1 = [&](const char* name, std::vector<double> vals) {
    Tensor* t = model->param_set().find(name);
    REQUIRE(t);
    REQUIRE(static_cast<size_t>(t->value.size()) == vals.size());
    for (Eigen::Index i = 0; i < t->value.size(); ++i)
      t->value.data()[i] = vals[static_cast<size_t>(i)];
  };
  const double a = 0.7, b = -0.9;
  const double p1 = 0.3, p2 = -0.4, q1 = 0.8, q2 = 0.1;
  const double m1 = 1.1, m2 = -0.6, c1 = 0.05, c2 = -0.2;
  set1("classifier.u1", {a});
  set1("classifier.u2", {b});
  set1("classifier.w_l", {p1, p2});
  set1("classifier.w_r", {q1, q2});
  set1("classifier.w_lr", {m1, m2});
  set1("classifier.b", {c1, c2});

  const double x = 0.5, y = 1.25;
  auto elu = [](double v) { return v > 0 ? v : std::exp(v) - 1.0; };
  double el = elu(a * x), er = elu(b * y);
  double logit1 = el * p1 + el * m1 * er + er * q1 + c1;
  double logit2 = el * p2 + el * m2 * er + er * q2 + c2;
  double z = std::exp(logit1) + std::exp(logit2);

  Eigen::VectorXd e_l(1), e_r(1);
  e_l << x;
  e_r << y;
  Eigen::VectorXd probs = model->classify(e_l, e_r);
  CHECK(probs(0) == doctest::Approx(std::exp(logit1) / z).epsilon(1e-12));
  CHECK(probs(1) == doctest::Approx(std::exp(logit2) / z).epsilon(1e-12));
}

// ---------------------------------------------------------------------- //
// losses

TEST_CASE("all-zero parameters give loss = ln(c) + sum ln(R)") {
  Rng rng(10);
  Corpus corpus = testsup::random_corpus(rng, 4, 3, 6);
  auto model = testsup::toy_model(corpus, toy_hp(6), 3);
  int R = model->labels().size();
  for (Tensor* t : model->parameters()) t->value.setZero();

  Document doc = testsup::random_document(rng, 3, "L");
  auto tree = RstTree::make_node(
      RstTree::make_node(RstTree::make_leaf(1), RstTree::make_leaf(2),
                         model->labels().at(0).second, model->labels().at(0).first),
      RstTree::make_leaf(3), model->labels().at(0).second, model->labels().at(0).first);
  auto gold = oracle::tree_to_trace(*tree, doc.doc_id);

  model->zero_grad();
  LossBreakdown loss =
      model->compute_loss(doc, gold, {.training = false, .add_regularizer = false});
  CHECK(loss.structure == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(loss.label == doctest::Approx(2.0 * std::log(static_cast<double>(R))).epsilon(1e-12));
}

TEST_CASE("forced splits and a single label give exactly zero data loss") {
  Hyperparams hp = toy_hp(4);
  hp.weight_decay = 0.01;
  JointLabelVocab labels;
  labels.add("Only", Nuclearity::NN);
  auto model = std::make_unique<ParserModel>(
      hp, labels, std::make_unique<ToyBackbone>(std::vector<std::string>{"a", "b"}, 4));
  model->init_params(5);

  Rng rng(11);
  Document doc = testsup::random_document(rng, 2, "F");
  auto tree =
      RstTree::make_node(RstTree::make_leaf(1), RstTree::make_leaf(2), Nuclearity::NN, "Only");
  auto gold = oracle::tree_to_trace(*tree, doc.doc_id);

  model->zero_grad();
  LossBreakdown loss = model->compute_loss(doc, gold, {.training = false});
  CHECK(loss.structure == 0.0);  // single candidate -> -log 1
  CHECK(loss.label == 0.0);      // single label -> -log 1
  double sq = 0.0;
  for (Tensor* t : model->parameters()) sq += t->value.squaredNorm();
  CHECK(loss.regularizer == doctest::Approx(hp.weight_decay * sq).epsilon(1e-12));
  CHECK(loss.total == doctest::Approx(loss.regularizer).epsilon(1e-12));
}

TEST_CASE("non-finite loss raises NumericalError") {
  Rng rng(77);
  Corpus corpus = testsup::random_corpus(rng, 2, 3, 4);
  auto model = testsup::toy_model(corpus, toy_hp(4), 8);
  Tensor* w_e = model->param_set().find("encoder.w_e");
  REQUIRE(w_e);
  w_e->value.setConstant(std::numeric_limits<double>::quiet_NaN());
  auto gold = oracle::tree_to_trace(*corpus[0].tree, corpus[0].doc.doc_id);
  model->zero_grad();
  CHECK_THROWS_AS(
      model->compute_loss(corpus[0].doc, gold, {.training = false, .add_regularizer = false}),
      NumericalError);
}

TEST_CASE("gradient check: analytic matches central differences") {
  Rng rng(123);
  Hyperparams hp = toy_hp(8);
  hp.weight_decay = 1e-3;
  for (int config = 0; config < 3; ++config) {
    Corpus corpus = testsup::random_corpus(rng, 3, 2, 5);
    auto model = testsup::toy_model(corpus, hp, 100 + static_cast<std::uint64_t>(config));
    const auto& sample = corpus[config % corpus.size()];
    auto gold = oracle::tree_to_trace(*sample.tree, sample.doc.doc_id);
    double err = testsup::gradient_check(*model, sample.doc, gold);
    CHECK(err < 1e-4);
  }
}

TEST_CASE("gradient check with multi-layer encoder and windowed input") {
  Rng rng(321);
  Hyperparams hp = toy_hp(6);
  hp.gru_layers = 2;
  hp.window = 12;
  hp.stride = 5;
  hp.weight_decay = 0.0;
  // Long document so several windows are stitched together.
  Document doc;
  doc.doc_id = "W";
  doc.lang = "en";
  for (int i = 1; i <= 4; ++i) {
    std::string text;
    for (int t = 0; t < 8; ++t) text += (t ? " w" : "w") + std::to_string((i * 7 + t) % 5);
    doc.edus.push_back({i, text, {}});
  }
  treebank::retokenize(doc);
  REQUIRE(doc.token_count() > hp.window);

  Corpus corpus;
  corpus.push_back({doc, testsup::random_binary_tree(rng, 4)});
  auto model = testsup::toy_model(corpus, hp, 9);
  auto gold = oracle::tree_to_trace(*corpus[0].tree, doc.doc_id);
  // Deep recurrent gradients are tiny here; a larger step keeps the
  // finite-difference rounding noise below the tolerance.
  std::vector<std::pair<std::string, double>> per_tensor;
  double err = testsup::gradient_check(*model, doc, gold, 1e-4, &per_tensor);
  if (err >= 1e-4)
    for (const auto& [name, e] : per_tensor) MESSAGE(name, " err=", e);
  CHECK(err < 1e-4);
}

// ---------------------------------------------------------------------- //
// parse

TEST_CASE("m=1 parses to Leaf(1) without decoder steps") {
  Rng rng(13);
  Corpus corpus = testsup::random_corpus(rng, 2, 2, 4);
  auto model = testsup::toy_model(corpus, toy_hp(6), 1);
  Document doc = testsup::random_document(rng, 1, "one");
  auto tree = model->parse(doc);
  CHECK(tree->is_leaf());
  CHECK(tree->edu == 1);
}

TEST_CASE("m=2 forces the split at 1") {
  Rng rng(14);
  Corpus corpus = testsup::random_corpus(rng, 2, 2, 4);
  auto model = testsup::toy_model(corpus, toy_hp(6), 2);
  Document doc = testsup::random_document(rng, 2, "two");
  auto tree = model->parse(doc);
  CHECK(internal_node_count(*tree) == 1);
  CHECK(tree->left->is_leaf());
  CHECK(tree->right->is_leaf());
}

TEST_CASE("random-parameter parses satisfy the tree invariants") {
  Rng rng(15);
  Corpus corpus = testsup::random_corpus(rng, 3, 2, 6);
  auto model = testsup::toy_model(corpus, toy_hp(6), 3);
  for (int trial = 0; trial < 50; ++trial) {
    int m = 1 + static_cast<int>(rng.index(12));
    Document doc = testsup::random_document(rng, m, "p" + std::to_string(trial));
    auto tree = model->parse(doc);
    validate_tree(*tree);
    CHECK(tree->leaf_count() == m);
    CHECK(internal_node_count(*tree) == m - 1);
  }
}

TEST_CASE("parse is deterministic for fixed parameters") {
  Rng rng(16);
  Corpus corpus = testsup::random_corpus(rng, 3, 2, 6);
  auto model = testsup::toy_model(corpus, toy_hp(6), 4);
  Document doc = testsup::random_document(rng, 9, "det");
  auto t1 = model->parse(doc);
  auto t2 = model->parse(doc);
  CHECK(tree_equal(*t1, *t2));
}

TEST_CASE("same seed gives identical initial parameters") {
  Rng rng(17);
  Corpus corpus = testsup::random_corpus(rng, 3, 2, 6);
  auto m1 = testsup::toy_model(corpus, toy_hp(6), 42);
  auto m2 = testsup::toy_model(corpus, toy_hp(6), 42);
  auto p1 = m1->parameters();
  auto p2 = m2->parameters();
  REQUIRE(p1.size() == p2.size());
  for (size_t i = 0; i < p1.size(); ++i)
    CHECK((p1[i]->value - p2[i]->value).cwiseAbs().maxCoeff() == 0.0);
}

// ---------------------------------------------------------------------- //
// checkpoints

TEST_CASE("checkpoint round trip restores parameters and behavior") {
  Rng rng(18);
  Corpus corpus = testsup::random_corpus(rng, 3, 2, 6);
  auto model = testsup::toy_model(corpus, toy_hp(6), 5);
  Document doc = testsup::random_document(rng, 7, "ck");
  auto before = model->parse(doc);

  std::string path =
      (std::filesystem::temp_directory_path() / "rstparse_ckpt_test.bin").string();
  save_checkpoint(*model, path);
  auto loaded = load_checkpoint(path);
  std::remove(path.c_str());

  auto p1 = model->parameters();
  auto p2 = loaded->parameters();
  REQUIRE(p1.size() == p2.size());
  for (size_t i = 0; i < p1.size(); ++i)
    CHECK((p1[i]->value - p2[i]->value).cwiseAbs().maxCoeff() == 0.0);
  CHECK(loaded->labels().size() == model->labels().size());
  auto after = loaded->parse(doc);
  CHECK(tree_equal(*before, *after));
}

TEST_CASE("checkpoint rejects wrong magic") {
  std::string path =
      (std::filesystem::temp_directory_path() / "rstparse_bad_ckpt.bin").string();
  {
    std::ofstream out(path, std::ios::binary);
    out << "definitely not a checkpoint";
  }
  CHECK_THROWS_AS(load_checkpoint(path), ParseError);
  std::remove(path.c_str());
}

// ---------------------------------------------------------------------- //
// distribution sampling

TEST_CASE("sampled pointer and classifier distributions are normalized") {
  Rng rng(19);
  Corpus corpus = testsup::random_corpus(rng, 3, 2, 8);
  auto model = testsup::toy_model(corpus, toy_hp(8), 6);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + static_cast<int>(rng.index(9));
    Document doc = testsup::random_document(rng, m, "n" + std::to_string(trial));
    EncodedDocument enc = model->encode(doc);
    int lo = 1 + static_cast<int>(rng.index(static_cast<size_t>(m - 1)));
    int hi = lo + 1 + static_cast<int>(rng.index(static_cast<size_t>(m - lo)));
    Eigen::VectorXd h = Eigen::VectorXd::Random(8);
    Eigen::VectorXd dist = ParserModel::pointer_distribution(h, enc.edu_repr, lo, hi);
    CHECK(std::abs(dist.sum() - 1.0) < 1e-6);
    CHECK(dist.minCoeff() >= 0.0);
    Eigen::Index k;
    dist.maxCoeff(&k);
    CHECK(lo + static_cast<int>(k) >= lo);
    CHECK(lo + static_cast<int>(k) < hi);

    Eigen::VectorXd probs = model->classify(Eigen::VectorXd::Random(8).eval(),
                                            Eigen::VectorXd::Random(8).eval());
    CHECK(std::abs(probs.sum() - 1.0) < 1e-6);
    CHECK(probs.minCoeff() >= 0.0);
  }
}
