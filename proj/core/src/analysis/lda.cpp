#include "rstparse/analysis/lda.hpp"

#include <algorithm>

#include "rstparse/errors.hpp"
#include "rstparse/util/rng.hpp"

namespace rstparse::analysis {

TopicModel fit_lda(const BagOfWords& corpus, const LdaOptions& opt, std::uint64_t seed) {
  const int K = opt.topics;
  const int V = static_cast<int>(corpus.vocab.size());
  const int D = static_cast<int>(corpus.docs.size());
  if (K < 1) throw AnalysisError("topic count must be at least 1");
  if (D == 0 || V == 0) throw AnalysisError("empty corpus after preprocessing");
  if (opt.iterations < 1) throw AnalysisError("need at least one Gibbs sweep");

  Rng rng(seed);

  // Token-topic assignments and count tables.
  std::vector<std::vector<int>> z(corpus.docs.size());
  Eigen::MatrixXi n_dk = Eigen::MatrixXi::Zero(D, K);
  Eigen::MatrixXi n_kw = Eigen::MatrixXi::Zero(K, V);
  Eigen::VectorXi n_k = Eigen::VectorXi::Zero(K);

  for (int d = 0; d < D; ++d) {
    const auto& words = corpus.docs[static_cast<size_t>(d)];
    z[static_cast<size_t>(d)].resize(words.size());
    for (size_t i = 0; i < words.size(); ++i) {
      int topic = static_cast<int>(rng.index(static_cast<size_t>(K)));
      z[static_cast<size_t>(d)][i] = topic;
      ++n_dk(d, topic);
      ++n_kw(topic, words[i]);
      ++n_k(topic);
    }
  }

  const double v_beta = static_cast<double>(V) * opt.beta;
  std::vector<double> weights(static_cast<size_t>(K));
  for (int sweep = 0; sweep < opt.iterations; ++sweep) {
    for (int d = 0; d < D; ++d) {
      const auto& words = corpus.docs[static_cast<size_t>(d)];
      for (size_t i = 0; i < words.size(); ++i) {
        const int w = words[i];
        const int old_topic = z[static_cast<size_t>(d)][i];
        --n_dk(d, old_topic);
        --n_kw(old_topic, w);
        --n_k(old_topic);

        double total = 0.0;
        for (int k = 0; k < K; ++k) {
          double p = (n_dk(d, k) + opt.alpha) * (n_kw(k, w) + opt.beta) / (n_k(k) + v_beta);
          weights[static_cast<size_t>(k)] = p;
          total += p;
        }
        double u = rng.real() * total;
        int topic = K - 1;
        double cum = 0.0;
        for (int k = 0; k < K; ++k) {
          cum += weights[static_cast<size_t>(k)];
          if (u < cum) {
            topic = k;
            break;
          }
        }

        z[static_cast<size_t>(d)][i] = topic;
        ++n_dk(d, topic);
        ++n_kw(topic, w);
        ++n_k(topic);
      }
    }
  }

  TopicModel model;
  model.vocab = corpus.vocab;
  model.doc_ids = corpus.doc_ids;
  model.doc_labels = corpus.doc_labels;
  model.phi.resize(K, V);
  for (int k = 0; k < K; ++k)
    for (int w = 0; w < V; ++w)
      model.phi(k, w) = (n_kw(k, w) + opt.beta) / (n_k(k) + v_beta);
  model.theta.resize(D, K);
  for (int d = 0; d < D; ++d) {
    double n_d = static_cast<double>(corpus.docs[static_cast<size_t>(d)].size());
    for (int k = 0; k < K; ++k)
      model.theta(d, k) = (n_dk(d, k) + opt.alpha) / (n_d + static_cast<double>(K) * opt.alpha);
  }
  // Exact renormalization so downstream consumers can rely on sum == 1
  // within tight tolerances.
  for (int k = 0; k < K; ++k) model.phi.row(k) /= model.phi.row(k).sum();
  for (int d = 0; d < D; ++d) model.theta.row(d) /= model.theta.row(d).sum();
  return model;
}

std::vector<std::string> top_keywords(const TopicModel& model, int topic, int n) {
  if (topic < 0 || topic >= model.topic_count())
    throw AnalysisError("topic index out of range");
  if (n < 0) throw AnalysisError("keyword count must be non-negative");
  std::vector<int> order(model.vocab.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double pa = model.phi(topic, a), pb = model.phi(topic, b);
    if (pa != pb) return pa > pb;
    return model.vocab[static_cast<size_t>(a)] < model.vocab[static_cast<size_t>(b)];
  });
  size_t take = std::min(static_cast<size_t>(n), order.size());
  std::vector<std::string> out;
  out.reserve(take);
  for (size_t i = 0; i < take; ++i) out.push_back(model.vocab[static_cast<size_t>(order[i])]);
  return out;
}

}  // namespace rstparse::analysis
