#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rstparse/model/tensor.hpp"
#include "rstparse/types.hpp"

namespace rstparse::model {

// Maps a token window to per-token vectors (rows == tokens.size(),
// cols == dim()). Long inputs are handled outside via sliding windows.
class EmbeddingBackbone {
 public:
  virtual ~EmbeddingBackbone() = default;

  virtual std::string kind() const = 0;
  virtual int dim() const = 0;

  virtual Eigen::MatrixXd encode(std::span<const std::string> tokens) = 0;

  // Accumulates gradients for a window previously passed to encode().
  // Frozen backbones ignore this.
  virtual void backward(std::span<const std::string> tokens, const Eigen::MatrixXd& grad) {
    (void)tokens;
    (void)grad;
  }

  // Trainable tensors, empty when the backbone is frozen.
  virtual std::vector<Tensor*> parameters() { return {}; }
  virtual void init(Rng& rng) { (void)rng; }
};

// Trainable lookup table over a fixed vocabulary; unknown tokens share the
// <unk> row. Used by tests and desk-scale experiments.
class ToyBackbone : public EmbeddingBackbone {
 public:
  ToyBackbone(std::vector<std::string> vocab, int dim);

  static std::vector<std::string> build_vocab(const Corpus& corpus, size_t max_size = 50000);

  std::string kind() const override { return "toy"; }
  int dim() const override { return dim_; }
  Eigen::MatrixXd encode(std::span<const std::string> tokens) override;
  void backward(std::span<const std::string> tokens, const Eigen::MatrixXd& grad) override;
  std::vector<Tensor*> parameters() override { return {&table_}; }
  void init(Rng& rng) override;

  const std::vector<std::string>& vocab() const { return vocab_; }
  int row_of(const std::string& token) const;

 private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, int> index_;
  int dim_;
  Tensor table_;  // (|vocab|+1) x dim, row 0 = <unk>
};

// Adapter to an external pretrained multilingual encoder exposed as an
// embedding service (POST {"tokens": [...]} -> {"vectors": [[...], ...]}).
// Frozen from the parser's point of view; activated only when the host
// environment provides the endpoint in the named variable.
class ExternalBackbone : public EmbeddingBackbone {
 public:
  explicit ExternalBackbone(int dim, std::string endpoint_env = "RSTPARSE_EMBEDDING_ENDPOINT");

  std::string kind() const override { return "external"; }
  int dim() const override { return dim_; }
  Eigen::MatrixXd encode(std::span<const std::string> tokens) override;

  const std::string& endpoint_env() const { return endpoint_env_; }

 private:
  int dim_;
  std::string endpoint_env_;
};

// Sliding-window plan over n tokens: full coverage, overlapping windows of
// size `window` advanced by `stride`; the final window is clipped at n.
// Inputs of at most `window` tokens get a single window.
struct WindowPlan {
  std::vector<std::pair<int, int>> windows;  // half-open [begin, end)
  std::vector<int> coverage;                 // windows covering each position
};

WindowPlan plan_windows(int n, int window, int stride);

// Encodes a token sequence through the backbone with the sliding-window
// strategy; positions covered by several windows take the arithmetic mean
// of their per-window vectors.
Eigen::MatrixXd encode_tokens_windowed(EmbeddingBackbone& backbone,
                                       std::span<const std::string> tokens, int window,
                                       int stride);

// Distributes d(merged)/d(window outputs) back through the mean merge and
// the backbone.
void encode_tokens_windowed_backward(EmbeddingBackbone& backbone,
                                     std::span<const std::string> tokens, int window, int stride,
                                     const Eigen::MatrixXd& dmerged);

}  // namespace rstparse::model
