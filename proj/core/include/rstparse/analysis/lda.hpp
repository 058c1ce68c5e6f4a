#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "rstparse/analysis/text_prep.hpp"

namespace rstparse::analysis {

struct LdaOptions {
  int topics = 5;
  int iterations = 1000;  // Gibbs sweeps
  double alpha = 0.1;     // symmetric document-topic prior
  double beta = 0.01;     // symmetric topic-word prior
};

struct TopicModel {
  Eigen::MatrixXd phi;    // topics x vocab, rows sum to 1
  Eigen::MatrixXd theta;  // docs x topics, rows sum to 1
  std::vector<std::string> vocab;
  std::vector<std::string> doc_ids;
  std::vector<std::string> doc_labels;

  int topic_count() const { return static_cast<int>(phi.rows()); }
};

// Collapsed Gibbs sampling; deterministic for a fixed seed. Throws
// AnalysisError on an empty corpus or k < 1.
TopicModel fit_lda(const BagOfWords& corpus, const LdaOptions& opt, std::uint64_t seed);

// The n highest-probability words of a topic, ties broken lexicographically.
std::vector<std::string> top_keywords(const TopicModel& model, int topic, int n);

}  // namespace rstparse::analysis
