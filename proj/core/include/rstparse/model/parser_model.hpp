#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rstparse/model/encoder.hpp"
#include "rstparse/model/hyperparams.hpp"
#include "rstparse/oracle/trace.hpp"
#include "rstparse/types.hpp"

namespace rstparse::model {

// Joint (relation, nuclearity) classes. Contains only combinations observed
// in training data, not the full cross product.
class JointLabelVocab {
 public:
  int add(const std::string& relation, Nuclearity nuc);
  int find(const std::string& relation, Nuclearity nuc) const;  // -1 when absent
  const std::pair<std::string, Nuclearity>& at(int index) const;
  int size() const { return static_cast<int>(labels_.size()); }

  static JointLabelVocab from_corpus(const Corpus& corpus);
  std::vector<std::string> to_strings() const;
  static JointLabelVocab from_strings(const std::vector<std::string>& strings);

 private:
  std::vector<std::pair<std::string, Nuclearity>> labels_;
  std::map<std::pair<std::string, Nuclearity>, int> index_;
};

struct LossBreakdown {
  double total = 0.0;
  double structure = 0.0;    // pointer cross-entropy
  double label = 0.0;        // classifier cross-entropy
  double regularizer = 0.0;  // lambda * ||theta||^2
};

struct LossOptions {
  bool training = true;         // enables dropout
  bool add_regularizer = true;  // include lambda * ||theta||^2 and its gradient
};

// Top-down document-level discourse parser: hierarchical encoder, pointer
// attention over split candidates, bi-affine joint-label classifier.
class ParserModel {
 public:
  ParserModel(const Hyperparams& hp, JointLabelVocab labels,
              std::unique_ptr<EmbeddingBackbone> backbone);

  // Uniform [-0.1, 0.1] weights, zero biases; reproducible per seed.
  void init_params(std::uint64_t seed);

  const Hyperparams& hyperparams() const { return hp_; }
  const JointLabelVocab& labels() const { return labels_; }
  EmbeddingBackbone& backbone() { return *backbone_; }
  std::uint64_t seed() const { return seed_; }

  std::vector<std::string>& relation_inventory() { return relation_inventory_; }
  const std::vector<std::string>& relation_inventory() const { return relation_inventory_; }

  std::vector<Tensor*> parameters();
  ParameterSet& param_set() { return params_; }
  void zero_grad();

  // Greedy decode; deterministic for fixed parameters.
  std::unique_ptr<RstTree> parse(const Document& doc);

  // Teacher-forced loss with gradients accumulated into the tensors.
  // Call zero_grad() beforehand when starting a fresh batch.
  LossBreakdown compute_loss(const Document& doc, const oracle::SplitTrace& gold,
                             const LossOptions& opts = {});

  // Adds lambda * ||theta||^2 to the gradients; returns the term's value.
  double add_l2_regularization(double lambda);

  EncodedDocument encode(const Document& doc, bool training = false);

  // Softmax of h . e_u over split candidates u in [lo, hi-1] of span
  // [lo, hi] (1-based inclusive EDU interval, hi > lo).
  static Eigen::VectorXd pointer_distribution(const Eigen::VectorXd& h,
                                              const Eigen::MatrixXd& edu_repr, int lo, int hi);

  // Bi-affine joint-label distribution for a (left span, right span) pair.
  Eigen::VectorXd classify(const Eigen::VectorXd& e_left, const Eigen::VectorXd& e_right) const;

 private:
  struct ClassifierCache;
  Eigen::VectorXd classify_forward(const Eigen::VectorXd& e_left, const Eigen::VectorXd& e_right,
                                   ClassifierCache* cache) const;
  void classify_backward(const ClassifierCache& cache, const Eigen::VectorXd& dlogits,
                         Eigen::VectorXd& de_left, Eigen::VectorXd& de_right);

  Hyperparams hp_;
  JointLabelVocab labels_;
  std::vector<std::string> relation_inventory_;
  ParameterSet params_;
  std::unique_ptr<EmbeddingBackbone> backbone_;
  std::unique_ptr<Encoder> encoder_;
  std::unique_ptr<GruCell> decoder_;
  Tensor *u1_, *u2_, *w_l_, *w_r_, *w_lr_, *b_cls_;
  std::uint64_t seed_ = 0;
  Rng dropout_rng_{0};
};

}  // namespace rstparse::model
