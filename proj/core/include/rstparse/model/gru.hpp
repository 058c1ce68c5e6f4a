#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rstparse/model/tensor.hpp"

namespace rstparse::model {

// Per-step activations needed by the backward pass.
struct GruStepCache {
  Eigen::VectorXd x, h_prev, r, z, n, gh_n;
};

// Gated recurrent unit, gate order [r; z; n]:
//   r = sigmoid(W_ih_r x + b_ih_r + W_hh_r h + b_hh_r)
//   z = sigmoid(W_ih_z x + b_ih_z + W_hh_z h + b_hh_z)
//   n = tanh(W_ih_n x + b_ih_n + r .* (W_hh_n h + b_hh_n))
//   h' = (1 - z) .* n + z .* h
class GruCell {
 public:
  GruCell(ParameterSet& params, const std::string& prefix, int input_dim, int hidden_dim);

  int input_dim() const { return in_; }
  int hidden_dim() const { return hid_; }

  Eigen::VectorXd forward(const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                          GruStepCache* cache) const;

  // Accumulates parameter gradients; adds the input and previous-state
  // gradients into dx and dh_prev.
  void backward(const GruStepCache& cache, const Eigen::VectorXd& dh, Eigen::VectorXd& dx,
                Eigen::VectorXd& dh_prev) const;

 private:
  Tensor *w_ih_, *w_hh_, *b_ih_, *b_hh_;
  int in_, hid_;
};

struct BiGruCache {
  std::vector<GruStepCache> fwd, bwd;
  Eigen::MatrixXd outputs;  // m x 2H, row i = [fwd_i; bwd_i]
};

// Bidirectional GRU over a sequence of row vectors; zero initial states.
class BiGruLayer {
 public:
  BiGruLayer(ParameterSet& params, const std::string& prefix, int input_dim, int hidden_dim);

  int hidden_dim() const { return fwd_.hidden_dim(); }

  Eigen::MatrixXd forward(const Eigen::MatrixXd& inputs, BiGruCache& cache) const;
  // Returns the gradient w.r.t. the layer inputs.
  Eigen::MatrixXd backward(const BiGruCache& cache, const Eigen::MatrixXd& doutputs) const;

 private:
  GruCell fwd_, bwd_;
};

}  // namespace rstparse::model
